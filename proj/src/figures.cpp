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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace losq
{
    namespace
    {
        const std::vector<double> snr_grid{-5, -2, 1, 4, 7, 10, 13, 16, 19, 22, 25};
        constexpr std::uint64_t unquantized_samples = 100000;

        ExperimentConfig base(const std::string &name, ArrayKind tx_kind, std::size_t tx_count, double tx_aperture,
                              const std::string &constellation, std::uint64_t seed)
        {
            ExperimentConfig c;
            c.name = name;
            c.tx = {tx_kind, tx_aperture, tx_count, constellation};
            c.distance = 100.0;
            c.wavelength = 0.005;
            c.snr_db = snr_grid;
            c.seed = seed;
            return c;
        }

        FigureCurve curve(const std::string &tag, ExperimentConfig cfg, ArrayKind rx_kind, double rx_aperture,
                          std::vector<double> s, EngineChoice engine)
        {
            cfg.name += "_" + tag;
            cfg.rx.kind = rx_kind;
            cfg.rx.aperture = rx_aperture;
            cfg.rx.s_factors = std::move(s);
            cfg.engine = engine;
            if (engine == EngineChoice::MC_UNQUANTIZED)
                cfg.samples = unquantized_samples;
            return {tag, std::move(cfg)};
        }

        // SNR sweeps: Gaussian-input capacity at S = 1, unquantized I(X;Y) at the largest S, and the
        // quantized curves.
        FigurePreset snr_figure(const std::string &id, ArrayKind tx_kind, std::size_t n_tx, ArrayKind capacity_rx,
                                ArrayKind rx_kind, const std::string &constellation, std::vector<double> s_values,
                                std::uint64_t seed)
        {
            const double d = 0.5;
            auto cfg = base(id, tx_kind, n_tx, d, constellation, seed);
            FigurePreset preset{id, "snr_db", {}};
            preset.curves.push_back(curve("capacity", cfg, capacity_rx, d, {1.0}, EngineChoice::CAPACITY));
            preset.curves.push_back(curve("unquantized", cfg, rx_kind, d, {s_values.back()}, EngineChoice::MC_UNQUANTIZED));
            preset.curves.push_back(curve("quantized", cfg, rx_kind, d, std::move(s_values), EngineChoice::AUTO));
            return preset;
        }

        std::string getenv_or(const char *name, const std::string &fallback)
        {
            const char *v = std::getenv(name);
            return v && *v ? std::string(v) : fallback;
        }
    } // namespace

    std::filesystem::path data_dir()
    {
        return getenv_or("LOSQ_DATA_DIR", LOSQ_DATA_DIR);
    }

    std::filesystem::path fixture_path(const std::string &id)
    {
        return data_dir() / "figures" / (id + ".csv");
    }

    std::vector<std::string> figure_ids()
    {
        return {"fig3a", "fig3b", "fig4a", "fig4b", "fig5", "fig6"};
    }

    FigurePreset figure_preset(const std::string &id, std::uint64_t seed)
    {
        using enum ArrayKind;
        if (id == "fig3a")
            return snr_figure(id, ULA, 2, ULA, ULA, "qam4", {1, 2, 4, 5}, seed);
        if (id == "fig3b")
            return snr_figure(id, ULA, 2, ULA, ULA, "qam16", {1, 2, 4, 5}, seed);
        if (id == "fig4a")
            return snr_figure(id, ULA, 2, ULA, PACKED, "qam4", {1, 2, 4, 5}, seed);
        if (id == "fig4b")
            return snr_figure(id, ULA, 2, ULA, PACKED, "qam16", {1, 2, 4, 5}, seed);
        if (id == "fig5")
            return snr_figure(id, URA, 4, URA, PACKED, "qam4", {0.5, 1, 2, 2.5}, seed);

        if (id == "fig6")
        {
            // largest array dimension 1/sqrt(2) m: 1D arrays of that length, 2D squares of side 0.5 m
            const double d1 = 1.0 / std::sqrt(2.0);
            const double d2 = 0.5;
            const std::vector<double> s_1d{0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5, 5};
            const std::vector<double> s_2d{0.25, 0.5, 0.75, 1, 1.25, 1.5, 1.75, 2, 2.25, 2.5};

            FigurePreset preset{id, "s_factor", {}};
            auto add = [&](const std::string &tag, ArrayKind tx_kind, std::size_t n, double tx_d, ArrayKind rx_kind,
                           double rx_d, const std::string &constellation, const std::vector<double> &s)
            {
                auto cfg = base(id, tx_kind, n, tx_d, constellation, seed);
                cfg.snr_db = {20.0};
                preset.curves.push_back(curve(tag, cfg, rx_kind, rx_d, s, EngineChoice::AUTO));
            };
            add("1dx1d_qam4", ULA, 2, d1, ULA, d1, "qam4", s_1d);
            add("1dx1d_qam16", ULA, 2, d1, ULA, d1, "qam16", s_1d);
            add("1dx2d_qam4", ULA, 2, d1, PACKED, d2, "qam4", s_1d);
            add("1dx2d_qam16", ULA, 2, d1, PACKED, d2, "qam16", s_1d);
            add("2dx2d_qam4", URA, 4, d2, PACKED, d2, "qam4", s_2d);
            return preset;
        }
        throw std::invalid_argument("unknown figure id '" + id + "'");
    }

    std::vector<FixturePoint> load_fixture(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open fixture " + path.string());
        std::vector<FixturePoint> points;
        std::string line;
        bool header_seen = false;
        while (std::getline(in, line))
        {
            if (line.empty() || line[0] == '#')
                continue;
            if (!header_seen)
            {
                if (line != "curve,s,snr_db,reference_bpcu,tolerance")
                    throw std::runtime_error("fixture header mismatch in " + path.string());
                header_seen = true;
                continue;
            }
            std::vector<std::string> f;
            std::stringstream ss(line);
            for (std::string cell; std::getline(ss, cell, ',');)
                f.push_back(cell);
            if (f.size() != 5)
                throw std::runtime_error("fixture row with " + std::to_string(f.size()) + " fields in " + path.string());
            points.push_back({f[0], std::stod(f[1]), std::stod(f[2]), std::stod(f[3]), std::stod(f[4])});
        }
        return points;
    }

    std::size_t FigureReport::out_of_tolerance() const
    {
        return static_cast<std::size_t>(
            std::count_if(deviations.begin(), deviations.end(), [](const DeviationRow &d)
                          { return !d.within_tol; }));
    }

    FigureReport reproduce_figure(const std::string &id, const FigureOptions &options)
    {
        const auto preset = figure_preset(id, options.seed);
        const auto fixture = load_fixture(fixture_path(id));

        FigureReport report;
        report.id = id;
        std::map<std::string, std::string> experiment_of_curve;
        for (const auto &c : preset.curves)
        {
            auto rows = run_sweep(c.config, {options.threads, options.log_progress});
            report.rows.insert(report.rows.end(), rows.begin(), rows.end());
            experiment_of_curve[c.curve] = c.config.name;
        }

        for (const auto &p : fixture)
        {
            const auto name = experiment_of_curve.find(p.curve);
            if (name == experiment_of_curve.end())
                throw std::runtime_error("fixture curve '" + p.curve + "' has no preset in " + id);
            const auto row = std::find_if(report.rows.begin(), report.rows.end(), [&](const ResultRow &r)
                                          { return r.experiment == name->second && std::abs(r.s_factor - p.s_factor) < 1e-9 &&
                                                   std::abs(r.snr_db - p.snr_db) < 1e-9; });
            if (row == report.rows.end())
                throw std::runtime_error("no result for " + p.curve + " S=" + format_number(p.s_factor) +
                                         " SNR=" + format_number(p.snr_db));

            DeviationRow d;
            d.figure = id;
            d.curve = p.curve;
            d.s_factor = p.s_factor;
            d.snr_db = p.snr_db;
            d.ours = row->mi_bpcu;
            d.reference = p.reference_bpcu;
            d.delta = row->mi_bpcu - p.reference_bpcu;
            d.tolerance = std::max(options.tolerance.value_or(p.tolerance), 3.0 * row->std_error);
            d.within_tol = std::abs(d.delta) <= d.tolerance; // false for NaN
            report.deviations.push_back(d);
        }
        return report;
    }

    void write_deviation_csv(std::ostream &out, const std::vector<DeviationRow> &rows)
    {
        out << deviation_header << '\n';
        for (const auto &d : rows)
            out << d.figure << ',' << d.curve << ',' << format_number(d.s_factor) << ',' << format_number(d.snr_db) << ','
                << format_number(d.ours) << ',' << format_number(d.reference) << ',' << format_number(d.delta) << ','
                << (d.within_tol ? "true" : "false") << '\n';
    }

    void write_svg(std::ostream &out, const FigureReport &report, const std::string &x_axis)
    {
        const bool by_snr = x_axis == "snr_db";
        const auto x_of = [&](double s, double snr)
        { return by_snr ? snr : s; };

        // one polyline per (experiment, S) on SNR axes, per experiment on S axes
        std::map<std::string, std::vector<std::pair<double, double>>> lines;
        double x_lo = 1e300, x_hi = -1e300, y_hi = 0.0;
        for (const auto &r : report.rows)
        {
            if (std::isnan(r.mi_bpcu))
                continue;
            const std::string key = by_snr ? r.experiment + " S=" + format_number(r.s_factor) : r.experiment;
            const double x = x_of(r.s_factor, r.snr_db);
            lines[key].emplace_back(x, r.mi_bpcu);
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_hi = std::max(y_hi, r.mi_bpcu);
        }
        for (const auto &d : report.deviations)
            y_hi = std::max(y_hi, d.reference);
        if (!(x_hi > x_lo))
            x_hi = x_lo + 1.0;
        y_hi = std::ceil(y_hi);

        const double w = 640, h = 420, left = 60, right = 220, top = 20, bottom = 50;
        const auto px = [&](double x)
        { return left + (x - x_lo) / (x_hi - x_lo) * (w - left - right); };
        const auto py = [&](double y)
        { return h - bottom - y / y_hi * (h - top - bottom); };

        out << fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" font-size=\"11\">\n", w, h);
        out << fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", left, top,
                           w - left - right, h - top - bottom);
        for (int i = 0; i <= 5; ++i)
        {
            const double yv = y_hi * i / 5.0, xv = x_lo + (x_hi - x_lo) * i / 5.0;
            out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{}</text>\n", left - 4, py(yv) + 4, format_number(yv));
            out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", px(xv), h - bottom + 14, format_number(xv));
        }
        out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", left + (w - left - right) / 2,
                           h - 12, by_snr ? "SNR (dB)" : "spatial sampling factor S");
        out << fmt::format("<text x=\"14\" y=\"{:.1f}\" transform=\"rotate(-90 14 {:.1f})\" text-anchor=\"middle\">bpcu</text>\n",
                           h / 2, h / 2);

        static const char *palette[] = {"#1f3c8c", "#d95319", "#edb120", "#7e2f8e", "#77ac30", "#4dbeee", "#a2142f", "#444444"};
        std::size_t idx = 0;
        for (auto &[key, pts] : lines)
        {
            std::sort(pts.begin(), pts.end());
            const char *color = palette[idx % std::size(palette)];
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (const auto &[x, y] : pts)
                out << fmt::format("{:.1f},{:.1f} ", px(x), py(y));
            out << "\"/>\n";
            out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" fill=\"{}\">{}</text>\n", w - right + 8, top + 14.0 * double(idx + 1),
                               color, key);
            ++idx;
        }
        for (const auto &d : report.deviations)
            out << fmt::format("<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"2.5\" fill=\"none\" stroke=\"{}\"/>\n",
                               px(x_of(d.s_factor, d.snr_db)), py(d.reference), d.within_tol ? "black" : "red");
        out << "</svg>\n";
    }
} // namespace losq
