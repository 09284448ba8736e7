// SPDX-License-Identifier: Apache-2.0
//
// losq - achievable rates of 1-bit quantized line-of-sight MIMO links
// Copyright (C) 2026 The losq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "losq/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char **argv)
{
    CLI::App app{"Achievable rates of LOS MIMO links with 1-bit I/Q quantization and spatial oversampling"};
    app.require_subcommand(1);

    int threads = 1;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
    app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Root seed for Monte-Carlo engines (overrides the config)");
    app.add_flag("-q,--quiet", quiet, "Suppress progress on stderr");

    auto *sweep = app.add_subcommand("sweep", "Run an experiment config and write CSV rows");
    std::string config_path, out_path;
    sweep->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", out_path, "Output CSV path")->required();

    auto *figure = app.add_subcommand("figure", "Reproduce a figure preset and report deviations");
    std::string figure_id, out_dir;
    std::optional<double> tolerance;
    figure->add_option("--id", figure_id, "Figure id")->required()->check(CLI::IsMember(losq::figure_ids()));
    figure->add_option("--out", out_dir, "Output directory")->required();
    figure->add_option("--tolerance", tolerance, "Override the per-point tolerance in bpcu");

    auto *check = app.add_subcommand("check", "Validate a config without running it");
    check->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*sweep)
        {
            auto cfg = losq::load_config(config_path);
            if (seed)
                cfg.seed = *seed;
            const auto rows = losq::run_sweep(cfg, {threads, !quiet});
            losq::emit_csv(rows, out_path);
            return 0;
        }

        if (*check)
        {
            auto cfg = losq::load_config(config_path);
            const auto resolved = losq::validate_config(cfg);
            std::cout << "config '" << cfg.name << "' is valid: N = " << resolved.tx.size() << ", "
                      << resolved.points.size() << " receive configuration(s), " << cfg.snr_db.size() << " SNR point(s)\n";
            for (const auto &p : resolved.points)
                std::cout << "  S = " << losq::format_number(p.s_factor) << "  M = " << p.rx.size()
                          << "  engine = " << losq::to_string(p.engine) << (p.error ? "  (" + *p.error + ")" : "") << '\n';
            for (const auto &note : resolved.notes)
                std::cout << "  note: " << note << '\n';
            return 0;
        }

        if (*figure)
        {
            losq::FigureOptions options;
            options.threads = threads;
            options.seed = seed.value_or(1);
            options.tolerance = tolerance;
            options.log_progress = !quiet;
            const auto report = losq::reproduce_figure(figure_id, options);

            std::filesystem::create_directories(out_dir);
            const std::filesystem::path dir(out_dir);
            losq::emit_csv(report.rows, dir / (figure_id + ".csv"));
            {
                std::ofstream dev(dir / (figure_id + "_deviation.csv"), std::ios::binary);
                losq::write_deviation_csv(dev, report.deviations);
            }
            {
                std::ofstream svg(dir / (figure_id + ".svg"), std::ios::binary);
                losq::write_svg(svg, report, losq::figure_preset(figure_id).x_axis);
            }
            const auto bad = report.out_of_tolerance();
            std::cout << figure_id << ": " << report.deviations.size() - bad << "/" << report.deviations.size()
                      << " points within tolerance\n";
            for (const auto &d : report.deviations)
                if (!d.within_tol)
                    std::cout << "  out of tolerance: " << d.curve << " S=" << losq::format_number(d.s_factor)
                              << " SNR=" << losq::format_number(d.snr_db) << " ours=" << losq::format_number(d.ours)
                              << " reference=" << losq::format_number(d.reference) << " delta=" << losq::format_number(d.delta)
                              << '\n';
            return bad == 0 ? 0 : 3;
        }
    }
    catch (const losq::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
