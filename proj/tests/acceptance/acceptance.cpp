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

// Acceptance suite: one PASS/FAIL line per criterion, detail lines for failing points.

#include "../oracles.hpp"
#include "losq/experiments.hpp"
#include "losq/infotheory.hpp"
#include "losq/summation.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

using namespace losq;

namespace
{
    using Clock = std::chrono::steady_clock;

    double seconds_since(Clock::time_point start)
    {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }

    struct Outcome
    {
        bool pass = true;
        std::string summary;
        std::vector<std::string> details;

        void fail(std::string line)
        {
            pass = false;
            details.push_back(std::move(line));
        }
    };

    const FigureCurve &curve_of(const FigurePreset &preset, const std::string &tag)
    {
        for (const auto &c : preset.curves)
            if (c.curve == tag)
                return c;
        throw std::runtime_error("no curve '" + tag + "' in " + preset.id);
    }

    const ResultRow *find_row(const std::vector<ResultRow> &rows, double s, double snr)
    {
        for (const auto &r : rows)
            if (std::abs(r.s_factor - s) < 1e-9 && std::abs(r.snr_db - snr) < 1e-9)
                return &r;
        return nullptr;
    }

    struct Comparison
    {
        std::size_t points = 0;
        std::size_t failures = 0;
        double worst = 0.0;
    };

    // Runs one preset curve and compares against its fixture points; tolerance(point, row) decides the bound.
    Comparison compare_curve(const std::string &figure, const std::string &tag, Outcome &out,
                             const std::function<double(const FixturePoint &, const ResultRow &)> &tolerance,
                             int threads)
    {
        const auto preset = figure_preset(figure);
        const auto &curve = curve_of(preset, tag);
        const auto rows = run_sweep(curve.config, {threads, false});
        Comparison cmp;
        for (const auto &p : load_fixture(fixture_path(figure)))
        {
            if (p.curve != tag)
                continue;
            ++cmp.points;
            const auto *row = find_row(rows, p.s_factor, p.snr_db);
            if (!row)
            {
                ++cmp.failures;
                out.fail(fmt::format("{} {} S={} snr={}: no result row", figure, tag, p.s_factor, p.snr_db));
                continue;
            }
            const double delta = row->mi_bpcu - p.reference_bpcu;
            const double tol = tolerance(p, *row);
            if (!std::isnan(delta))
                cmp.worst = std::max(cmp.worst, std::abs(delta));
            if (!(std::abs(delta) <= tol))
            {
                ++cmp.failures;
                out.fail(fmt::format("{} {} S={} snr={}: ours {:.6f} reference {:.6f} delta {:+.4f} tol {:.4f} (M={})",
                                     figure, tag, format_number(p.s_factor), format_number(p.snr_db), row->mi_bpcu,
                                     p.reference_bpcu, delta, tol, row->m_rx));
            }
        }
        if (cmp.points == 0)
            out.fail(fmt::format("{} {}: fixture has no points", figure, tag));
        return cmp;
    }

    Outcome criterion_1(int threads)
    {
        Outcome out;
        const auto start = Clock::now();
        std::size_t points = 0;
        for (const char *fig : {"fig3a", "fig5"})
            points += compare_curve(fig, "capacity", out, [](const auto &, const auto &) { return 1e-5; }, threads).points;

        // worked values
        const auto c2 = gaussian_capacity(
            los_channel({ula_positions(0.5, 2), ula_positions(0.5, 2), 100.0, 0.005}), NoiseModel::from_snr_db(-5.0), 2);
        if (std::abs(c2.bpcu - 0.792818322) > 1e-5)
            out.fail(fmt::format("N=2 -5 dB: {:.9f}", c2.bpcu));
        const auto c4 = gaussian_capacity(
            los_channel({ura_positions(0.5, 4), ura_positions(0.5, 4), 100.0, 0.005}), NoiseModel::from_snr_db(-5.0), 4);
        if (std::abs(c4.bpcu - 1.585636645) > 1e-5)
            out.fail(fmt::format("N=4 -5 dB: {:.9f}", c4.bpcu));

        const double elapsed = seconds_since(start);
        if (elapsed >= 1.0)
            out.fail(fmt::format("runtime {:.3f} s exceeds 1 s", elapsed));
        out.summary = fmt::format("Gaussian capacity, {} points within 1e-5 bpcu, {:.3f} s", points, elapsed);
        return out;
    }

    Outcome criterion_2(int threads)
    {
        Outcome out;
        const auto start = Clock::now();
        const auto cmp = compare_curve("fig3a", "quantized", out, [](const auto &, const auto &) { return 0.02; }, threads);
        const double elapsed = seconds_since(start);
        if (elapsed > 300.0)
            out.fail(fmt::format("runtime {:.1f} s exceeds 5 min", elapsed));
        out.summary = fmt::format("1D x 1D 4-QAM exact, {}/{} points within 0.02 (max |delta| {:.4f}), {:.1f} s",
                                  cmp.points - cmp.failures, cmp.points, cmp.worst, elapsed);
        return out;
    }

    Outcome criterion_3(int threads)
    {
        Outcome out;
        std::size_t points = 0, failures = 0;
        double worst = 0.0;
        for (const char *fig : {"fig3b", "fig4a", "fig4b"})
        {
            const auto cmp = compare_curve(fig, "quantized", out,
                                           [](const FixturePoint &, const ResultRow &row)
                                           { return row.m_rx == 8 ? 0.05 : 0.02; },
                                           threads);
            points += cmp.points;
            failures += cmp.failures;
            worst = std::max(worst, cmp.worst);
        }
        out.summary = fmt::format("16-QAM and 2D receivers, {}/{} points within 0.02 (M = 8: 0.05), max |delta| {:.4f}",
                                  points - failures, points, worst);
        return out;
    }

    Outcome criterion_4(int threads)
    {
        Outcome out;
        const auto cmp = compare_curve("fig5", "quantized", out, [](const auto &, const auto &) { return 0.02; }, threads);
        out.summary = fmt::format("2D x 2D N = 4, {}/{} points within 0.02 (max |delta| {:.4f})", cmp.points - cmp.failures,
                                  cmp.points, cmp.worst);
        return out;
    }

    Outcome criterion_5(int threads)
    {
        Outcome out;
        std::size_t points = 0, failures = 0;
        for (const char *tag : {"1dx1d_qam4", "1dx1d_qam16", "1dx2d_qam4", "1dx2d_qam16", "2dx2d_qam4"})
        {
            const double tol = std::string(tag).starts_with("1dx1d") ? 0.02 : 0.05;
            const auto cmp = compare_curve("fig6", tag, out, [tol](const auto &, const auto &) { return tol; }, threads);
            points += cmp.points;
            failures += cmp.failures;
        }
        out.summary = fmt::format("S sweep at 20 dB, {}/{} points within tolerance", points - failures, points);
        return out;
    }

    Outcome criterion_6(int threads)
    {
        Outcome out;
        std::size_t points = 0, failures = 0;
        for (const char *fig : {"fig3a", "fig5"})
        {
            const auto cmp = compare_curve(fig, "unquantized", out,
                                           [](const FixturePoint &, const ResultRow &row)
                                           { return std::max(0.05, 3.0 * row.std_error); },
                                           threads);
            points += cmp.points;
            failures += cmp.failures;

            const auto preset = figure_preset(fig);
            const auto &cfg = curve_of(preset, "unquantized").config;
            if (cfg.samples.value_or(0) != 100000)
                out.fail(fmt::format("{}: unquantized curve uses {} samples", fig, cfg.samples.value_or(0)));
            const auto resolved = validate_config(cfg);
            const double hx = source_entropy(enumerate_inputs(resolved.constellation, cfg.tx.count));
            for (const auto &row : run_sweep(cfg, {threads, false}))
                if (row.snr_db >= 16.0)
                {
                    ++points;
                    if (!(std::abs(row.mi_bpcu - hx) <= 0.01))
                    {
                        ++failures;
                        out.fail(fmt::format("{} saturation at {} dB: {:.6f} vs H(X) = {}", fig, row.snr_db, row.mi_bpcu, hx));
                    }
                }
        }
        out.summary = fmt::format("unquantized discrete-input MI, {}/{} checks passed", points - failures, points);
        return out;
    }

    ChannelMatrix random_los_channel(std::size_t tx, std::size_t rx, RngStream &rng)
    {
        const auto draw = [&](std::size_t count, double aperture)
        {
            std::vector<Point2> pts;
            while (pts.size() < count)
                pts.push_back({(rng.uniform() - 0.5) * aperture, (rng.uniform() - 0.5) * aperture});
            return AntennaArray(pts, aperture, ArrayKind::CUSTOM);
        };
        const double dt = 0.2 + 0.8 * rng.uniform();
        const double dr = 0.2 + 0.8 * rng.uniform();
        const double distance = 50.0 + 150.0 * rng.uniform();
        return los_channel({draw(tx, dt), draw(rx, dr), distance, 0.005});
    }

    Outcome criterion_7(int)
    {
        Outcome out;
        const auto start = Clock::now();
        const int instances = 24;
        double worst = 0.0;
        for (int i = 0; i < instances; ++i)
        {
            auto rng = RngStream::derive(7, {std::uint64_t(i)});
            const std::size_t rx = 1 + std::size_t(i % 3);
            const std::size_t tx = 1 + std::size_t((i / 3) % 2);
            const auto h = random_los_channel(tx, rx, rng);
            const auto inputs = enumerate_inputs(build_constellation(i % 4 == 3 ? "qam16" : "qam4"), tx);
            const auto noise = NoiseModel::from_snr_db(-10.0 + 40.0 * rng.uniform());
            const double ours = mi_quantized_exact(h, inputs, noise).bpcu;
            const double ref = oracle::naive_quantized_mi(h, inputs, noise.sigma2());
            worst = std::max(worst, std::abs(ours - ref));
            if (!(std::abs(ours - ref) <= 1e-9))
                out.fail(fmt::format("instance {} (M={}, N={}): exact {:.12f} oracle {:.12f}", i, rx, tx, ours, ref));
        }
        const double elapsed = seconds_since(start);
        if (elapsed >= 10.0)
            out.fail(fmt::format("runtime {:.2f} s exceeds 10 s", elapsed));
        out.summary = fmt::format("{} random instances, max |exact - oracle| = {:.2e}, {:.2f} s", instances, worst, elapsed);
        return out;
    }

    Outcome criterion_8(int threads)
    {
        Outcome out;
        const int configs = 60;
        std::map<std::string, int> failed_by_property;
        const auto check = [&](int id, const std::string &property, bool ok, const std::string &detail)
        {
            if (!ok)
            {
                ++failed_by_property[property];
                out.fail(fmt::format("config {} {}: {}", id, property, detail));
            }
        };

        for (int i = 0; i < configs; ++i)
        {
            auto rng = RngStream::derive(8, {std::uint64_t(i)});
            const std::size_t tx = 1 + std::size_t(i % 2);
            const std::size_t rx = 1 + std::size_t((i / 2) % 4);
            const std::string cname = (i % 5 == 4) ? "qam16" : "qam4";
            const auto inputs = enumerate_inputs(build_constellation(cname), tx);
            const auto full = random_los_channel(tx, rx + 1, rng);
            const ChannelMatrix h(full.matrix().topRows(Eigen::Index(rx)));
            const double snr = -5.0 + 30.0 * rng.uniform();
            const auto noise = NoiseModel::from_snr_db(snr);
            const ExactOptions exact_opts{12, threads};
            const double mi = mi_quantized_exact(h, inputs, noise, exact_opts).bpcu;

            // normalization of p(y|x) and p(y)
            const auto table = build_quadrant_table(h, inputs, noise);
            const std::uint64_t patterns = std::uint64_t{1} << (2 * rx);
            double worst_cond = 0.0;
            CompensatedSum total;
            for (std::size_t k = 0; k < inputs.size(); ++k)
            {
                CompensatedSum acc;
                for (std::uint64_t y = 0; y < patterns; ++y)
                {
                    const double p = table.conditional(k, SignVector::from_index(y, rx));
                    acc += p;
                    total += inputs.prior(k) * p;
                }
                worst_cond = std::max(worst_cond, std::abs(acc.value() - 1.0));
            }
            check(i, "normalization", worst_cond <= 1e-12 && std::abs(total.value() - 1.0) <= 1e-12,
                  fmt::format("max |sum p(y|x) - 1| = {:.2e}, |sum p(y) - 1| = {:.2e}", worst_cond,
                              std::abs(total.value() - 1.0)));

            // I(H, sigma) = I(cH, c sigma)
            const double c = 0.25 + 3.0 * rng.uniform();
            const double scaled = mi_quantized_exact(h.scaled(c), inputs, NoiseModel(c * c * noise.sigma2()), exact_opts).bpcu;
            check(i, "scale invariance", std::abs(scaled - mi) <= 1e-9, fmt::format("{:.12f} vs {:.12f}", scaled, mi));

            // receive permutation
            std::vector<std::size_t> order(rx);
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng.engine());
            const double permuted = mi_quantized_exact(h.rows_permuted(order), inputs, noise, exact_opts).bpcu;
            check(i, "permutation invariance", std::abs(permuted - mi) <= 1e-9, fmt::format("{:.12f} vs {:.12f}", permuted, mi));

            // adding a receive antenna cannot lose information
            const double superset = mi_quantized_exact(full, inputs, noise, exact_opts).bpcu;
            check(i, "superset monotonicity", superset >= mi - 1e-9, fmt::format("M+1: {:.12f} < M: {:.12f}", superset, mi));

            // bounds
            const double hx = source_entropy(inputs);
            check(i, "bounds", mi >= -1e-12 && mi <= std::min(hx, 2.0 * double(rx)) + 1e-9,
                  fmt::format("I = {:.12f}, H(X) = {}, 2M = {}", mi, hx, 2 * rx));

            // Monte-Carlo estimators
            const MonteCarloOptions mc_opts{MonteCarloOptions{}.samples, 8, std::uint64_t(i), threads};
            const auto mc = mi_quantized_mc(h, inputs, noise, mc_opts);
            // 1e-12 covers rounding when every sample returns the same value (stderr exactly 0)
            check(i, "MC vs exact", std::abs(mc.bpcu - mi) <= 3.0 * mc.std_error + 1e-12,
                  fmt::format("mc {:.9f} +- {:.3e}, exact {:.9f}, delta {:.3e}", mc.bpcu, mc.std_error, mi, mc.bpcu - mi));
            const auto unq = mi_unquantized_discrete_mc(h, inputs, noise, mc_opts);
            check(i, "data processing", mi <= unq.bpcu + 3.0 * unq.std_error,
                  fmt::format("quantized {:.6f} > unquantized {:.6f} +- {:.6f}", mi, unq.bpcu, unq.std_error));

            // noiseless limit
            const double at60 = mi_quantized_exact(h, inputs, NoiseModel::from_snr_db(60.0), exact_opts).bpcu;
            const double limit = high_snr_mi(h, inputs).bpcu;
            check(i, "high-SNR consistency", std::abs(at60 - limit) <= 1e-3,
                  fmt::format("60 dB {:.6f} vs limit {:.6f} (M={}, N={}, {})", at60, limit, rx, tx, cname));
        }

        std::string tally;
        for (const auto &[name, count] : failed_by_property)
            tally += fmt::format("; {} failed in {} configs", name, count);
        out.summary = fmt::format("property suite over {} random configurations{}", configs, tally);
        return out;
    }

    std::string csv_text(const ExperimentConfig &cfg, int threads)
    {
        std::ostringstream s;
        write_csv(s, run_sweep(cfg, {threads, false}));
        return s.str();
    }

    Outcome criterion_9(int)
    {
        Outcome out;
        std::size_t runs = 0;
        for (const auto &[figure, tag] : {std::pair{"fig3b", "quantized"}, std::pair{"fig5", "unquantized"},
                                          std::pair{"fig4a", "capacity"}})
        {
            auto cfg = curve_of(figure_preset(figure), tag).config;
            if (cfg.engine == EngineChoice::MC_UNQUANTIZED)
                cfg.samples = 20000;
            // a Monte-Carlo variant of the quantized curve as well
            std::vector<ExperimentConfig> variants{cfg};
            if (cfg.engine == EngineChoice::AUTO)
            {
                auto mc = cfg;
                mc.engine = EngineChoice::MC;
                mc.samples = 20000;
                mc.snr_db = {-5.0, 10.0, 25.0};
                variants.push_back(mc);
                variants.front().rx.s_factors = {1.0, 2.0, 4.0};
            }
            for (const auto &v : variants)
            {
                const auto reference = csv_text(v, 1);
                for (int threads : {1, 2, 4})
                {
                    ++runs;
                    if (csv_text(v, threads) != reference)
                        out.fail(fmt::format("{} ({}): CSV differs with {} threads", v.name, to_string(v.engine), threads));
                }
            }
        }
        out.summary = fmt::format("{} repeated sweeps byte-identical across runs and thread counts", runs);
        return out;
    }

    using Criterion = Outcome (*)(int);
    const std::map<int, Criterion> criteria{{1, criterion_1}, {2, criterion_2}, {3, criterion_3},
                                            {4, criterion_4}, {5, criterion_5}, {6, criterion_6},
                                            {7, criterion_7}, {8, criterion_8}, {9, criterion_9}};
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"losq acceptance suite"};
    std::vector<int> selected;
    int threads = 1;
    app.add_option("--criterion", selected, "criterion numbers to run (default: all)")->check(CLI::Range(1, 9));
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);
    if (selected.empty())
        for (const auto &[id, fn] : criteria)
            selected.push_back(id);

    bool all_pass = true;
    for (int id : selected)
    {
        Outcome outcome;
        try
        {
            outcome = criteria.at(id)(threads);
        }
        catch (const std::exception &e)
        {
            outcome.fail(std::string("exception: ") + e.what());
        }
        for (const auto &line : outcome.details)
            fmt::print("    {}\n", line);
        fmt::print("criterion {}: {} - {}\n", id, outcome.pass ? "PASS" : "FAIL", outcome.summary);
        std::fflush(stdout);
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
