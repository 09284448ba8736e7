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

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace losq
{
    std::vector<ResultRow> run_sweep(const ExperimentConfig &config, const SweepOptions &options)
    {
        const auto resolved = validate_config(config);
        const auto inputs = enumerate_inputs(resolved.constellation, resolved.tx.size());
        const std::uint64_t experiment_key = stable_hash(config.name);
        for (const auto &note : resolved.notes)
            if (options.log_progress)
                std::clog << "[" << config.name << "] note: " << note << '\n';

        std::vector<ResultRow> rows;
        rows.reserve(resolved.points.size() * config.snr_db.size());
        for (std::size_t si = 0; si < resolved.points.size(); ++si)
        {
            const auto &point = resolved.points[si];
            const LinkGeometry geometry{resolved.tx, point.rx, config.distance, config.wavelength};
            const auto h = los_channel(geometry);

            for (std::size_t ni = 0; ni < config.snr_db.size(); ++ni)
            {
                ResultRow row;
                row.experiment = config.name;
                row.snr_db = config.snr_db[ni];
                row.s_factor = point.s_factor;
                row.m_rx = point.rx.size();
                row.n_tx = resolved.tx.size();
                row.engine = to_string(point.engine);
                row.mi_bpcu = std::numeric_limits<double>::quiet_NaN();

                const auto start = std::chrono::steady_clock::now();
                if (point.error)
                {
                    std::clog << "[" << config.name << "] S=" << format_number(point.s_factor)
                              << " SNR=" << format_number(row.snr_db) << " dB skipped: " << *point.error << '\n';
                    rows.push_back(row);
                    continue;
                }

                try
                {
                    const auto noise = NoiseModel::from_snr_db(row.snr_db);
                    MonteCarloOptions mc;
                    mc.samples = resolved.samples;
                    mc.seed = config.seed;
                    mc.stream = derive_key(experiment_key, {ni, si});
                    mc.threads = options.threads;

                    MIResult r;
                    switch (point.engine)
                    {
                    case Engine::EXACT:
                        r = mi_quantized_exact(h, inputs, noise, {config.exact_max_rx, options.threads});
                        break;
                    case Engine::MC:
                        r = mi_quantized_mc(h, inputs, noise, mc);
                        break;
                    case Engine::MC_UNQUANTIZED:
                        r = mi_unquantized_discrete_mc(h, inputs, noise, mc);
                        break;
                    case Engine::CAPACITY:
                        r = gaussian_capacity(h, noise, resolved.tx.size());
                        break;
                    case Engine::HIGH_SNR:
                        r = high_snr_mi(h, inputs);
                        break;
                    }
                    row.mi_bpcu = r.bpcu;
                    row.std_error = r.std_error;
                    row.samples = r.samples;
                    row.seed = r.samples > 0 ? config.seed : 0;
                }
                catch (const std::exception &e)
                {
                    std::clog << "[" << config.name << "] S=" << format_number(point.s_factor)
                              << " SNR=" << format_number(row.snr_db) << " dB failed: " << e.what() << '\n';
                }

                if (options.log_progress)
                {
                    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                    std::clog << fmt::format("[{}] S={} M={} SNR={} dB {} -> {} bpcu ({:.3f} s)\n", config.name,
                                             format_number(row.s_factor), row.m_rx, format_number(row.snr_db),
                                             row.engine, format_number(row.mi_bpcu), wall);
                }
                rows.push_back(row);
            }
        }
        return rows;
    }

    std::string format_number(double value)
    {
        if (std::isnan(value))
            return "nan";
        const auto text = fmt::format("{:.9g}", value);
        return text == "-0" ? "0" : text;
    }

    void write_csv(std::ostream &out, const std::vector<ResultRow> &rows)
    {
        out << csv_header << '\n';
        for (const auto &r : rows)
            out << r.experiment << ',' << format_number(r.snr_db) << ',' << format_number(r.s_factor) << ','
                << r.m_rx << ',' << r.n_tx << ',' << r.engine << ',' << format_number(r.mi_bpcu) << ','
                << format_number(r.std_error) << ',' << r.samples << ',' << r.seed << '\n';
    }

    void emit_csv(const std::vector<ResultRow> &rows, const std::filesystem::path &path)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + path.string());
        write_csv(out, rows);
        out.flush();
        if (!out)
            throw std::runtime_error("error while writing " + path.string());
    }

    std::vector<ResultRow> parse_csv(std::istream &in)
    {
        std::string line;
        if (!std::getline(in, line) || line != csv_header)
            throw std::runtime_error("CSV header mismatch");

        std::vector<ResultRow> rows;
        std::size_t line_no = 1;
        while (std::getline(in, line))
        {
            ++line_no;
            if (line.empty())
                continue;
            std::vector<std::string> f;
            std::stringstream ss(line);
            for (std::string cell; std::getline(ss, cell, ',');)
                f.push_back(cell);
            if (f.size() != 10)
                throw std::runtime_error("CSV line " + std::to_string(line_no) + ": expected 10 fields");
            try
            {
                ResultRow r;
                r.experiment = f[0];
                r.snr_db = std::stod(f[1]);
                r.s_factor = std::stod(f[2]);
                r.m_rx = std::stoul(f[3]);
                r.n_tx = std::stoul(f[4]);
                r.engine = f[5];
                r.mi_bpcu = std::stod(f[6]);
                r.std_error = std::stod(f[7]);
                r.samples = std::stoull(f[8]);
                r.seed = std::stoull(f[9]);
                rows.push_back(std::move(r));
            }
            catch (const std::logic_error &)
            {
                throw std::runtime_error("CSV line " + std::to_string(line_no) + ": malformed number");
            }
        }
        return rows;
    }
} // namespace losq
