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

#pragma once

#include "losq/geometry.hpp"
#include "losq/infotheory.hpp"
#include "losq/signal.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace losq
{
    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    struct TxSpec
    {
        ArrayKind kind = ArrayKind::ULA;
        double aperture = 0.5;
        std::size_t count = 2;
        std::string constellation = "qam4";
    };

    // Receive side: either explicit antenna counts or spatial sampling factors S = M / N.
    struct RxSpec
    {
        ArrayKind kind = ArrayKind::ULA;
        double aperture = 0.5;
        std::vector<std::size_t> counts;
        std::vector<double> s_factors;
    };

    enum class EngineChoice
    {
        AUTO, // EXACT when M <= exact cap, otherwise MC
        EXACT,
        MC,
        MC_UNQUANTIZED,
        CAPACITY,
        HIGH_SNR
    };

    std::string to_string(EngineChoice engine);
    EngineChoice parse_engine_choice(const std::string &name);

    struct ExperimentConfig
    {
        std::string name = "experiment";
        TxSpec tx;
        RxSpec rx;
        double distance = 100.0;
        double wavelength = 0.005;
        std::vector<double> snr_db;
        EngineChoice engine = EngineChoice::AUTO;
        std::optional<std::uint64_t> samples; // engine default when unset
        std::uint64_t seed = 1;
        std::size_t exact_max_rx = 12;
        std::optional<std::filesystem::path> packing_catalog;
    };

    // JSON text with sections "tx", "rx", "channel", "engine"; unknown keys throw ConfigError.
    ExperimentConfig parse_config(std::istream &in);
    ExperimentConfig load_config(const std::filesystem::path &path);

    struct ResolvedPoint
    {
        double s_factor = 0.0;
        AntennaArray rx;
        Engine engine = Engine::EXACT;
        std::optional<std::string> error; // e.g. exact engine cap exceeded
    };

    struct ResolvedExperiment
    {
        ExperimentConfig config;
        AntennaArray tx;
        Constellation constellation;
        std::vector<ResolvedPoint> points; // one per S, in config order
        std::uint64_t samples = 0;
        std::vector<std::string> notes;    // e.g. "no oversampling"
    };

    ResolvedExperiment validate_config(const ExperimentConfig &config);

    struct ResultRow
    {
        std::string experiment;
        double snr_db = 0.0;
        double s_factor = 0.0;
        std::size_t m_rx = 0;
        std::size_t n_tx = 0;
        std::string engine;
        double mi_bpcu = 0.0; // NaN when the point failed
        double std_error = 0.0;
        std::uint64_t samples = 0;
        std::uint64_t seed = 0;

        friend bool operator==(const ResultRow &, const ResultRow &) = default;
    };

    struct SweepOptions
    {
        int threads = 1;
        bool log_progress = false;
    };

    // Rows ordered by S (config order), then SNR (config order).
    std::vector<ResultRow> run_sweep(const ExperimentConfig &config, const SweepOptions &options = {});

    inline constexpr const char *csv_header = "experiment,snr_db,s_factor,m_rx,n_tx,engine,mi_bpcu,stderr,samples,seed";

    std::string format_number(double value); // 9 significant digits
    void write_csv(std::ostream &out, const std::vector<ResultRow> &rows);
    void emit_csv(const std::vector<ResultRow> &rows, const std::filesystem::path &path);
    std::vector<ResultRow> parse_csv(std::istream &in);

    struct FixturePoint
    {
        std::string curve;
        double s_factor = 0.0;
        double snr_db = 0.0;
        double reference_bpcu = 0.0;
        double tolerance = 0.0;
    };

    std::vector<FixturePoint> load_fixture(const std::filesystem::path &path);

    struct FigureCurve
    {
        std::string curve; // fixture curve tag
        ExperimentConfig config;
    };

    struct FigurePreset
    {
        std::string id;
        std::string x_axis; // "snr_db" or "s_factor"
        std::vector<FigureCurve> curves;
    };

    std::vector<std::string> figure_ids();
    FigurePreset figure_preset(const std::string &id, std::uint64_t seed = 1);
    std::filesystem::path data_dir();
    std::filesystem::path fixture_path(const std::string &id);

    struct DeviationRow
    {
        std::string figure;
        std::string curve;
        double s_factor = 0.0;
        double snr_db = 0.0;
        double ours = 0.0;
        double reference = 0.0;
        double delta = 0.0;
        double tolerance = 0.0;
        bool within_tol = false;
    };

    struct FigureReport
    {
        std::string id;
        std::vector<ResultRow> rows;
        std::vector<DeviationRow> deviations;
        std::size_t out_of_tolerance() const;
    };

    struct FigureOptions
    {
        int threads = 1;
        std::uint64_t seed = 1;
        std::optional<double> tolerance; // overrides fixture tolerances
        bool log_progress = false;
    };

    // Runs every curve of the named figure and compares against its fixture. Tolerance for
    // Monte-Carlo rows is max(fixture tolerance, 3 stderr).
    FigureReport reproduce_figure(const std::string &id, const FigureOptions &options = {});

    inline constexpr const char *deviation_header = "figure,curve,s,snr_db,ours,paper,delta,within_tol";
    void write_deviation_csv(std::ostream &out, const std::vector<DeviationRow> &rows);

    // Line plot of the result rows, one polyline per (experiment) curve, with the fixture points as markers.
    void write_svg(std::ostream &out, const FigureReport &report, const std::string &x_axis);
} // namespace losq
