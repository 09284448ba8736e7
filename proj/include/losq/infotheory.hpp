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
#include "losq/signal.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace losq
{
    // Probabilities of the quadrants (+,+), (+,-), (-,+), (-,-).
    using QuadrantRow = std::array<double, 4>;

    // P(real dimension > 0) for a real Gaussian with mean `mean` and standard deviation `std_dev`.
    double half_line_probability(double mean, double std_dev);

    // Quadrant probabilities of a CN(mean, sigma2) sample; requires sigma2 > 0.
    QuadrantRow quadrant_probabilities(cplx mean, double sigma2);

    // Entropy in bits of one quadrant row.
    double quadrant_entropy(const QuadrantRow &row);

    /*!
    Per (input vector, receive antenna) quadrant probabilities. Conditional
    on x the antennas are independent, so p(y_Q | x) is the product over m
    of row(x, m)[code_m].
    */
    class QuadrantTable
    {
    public:
        QuadrantTable(std::size_t input_count, std::size_t rx_count);

        std::size_t input_count() const { return input_count_; }
        std::size_t rx_count() const { return rx_count_; }

        QuadrantRow &row(std::size_t k, std::size_t m) { return rows_[k * rx_count_ + m]; }
        const QuadrantRow &row(std::size_t k, std::size_t m) const { return rows_[k * rx_count_ + m]; }

        double conditional(std::size_t k, const SignVector &y) const;

    private:
        std::size_t input_count_;
        std::size_t rx_count_;
        std::vector<QuadrantRow> rows_;
    };

    QuadrantTable build_quadrant_table(const ChannelMatrix &h, const InputEnsemble &inputs, const NoiseModel &noise);

    // Noiseless table: deterministic signs, and 1/2 for dimensions with
    // |mean| <= rel_zero_threshold * max |mean component| over the ensemble.
    QuadrantTable high_snr_quadrant_table(const ChannelMatrix &h, const InputEnsemble &inputs,
                                          double rel_zero_threshold = 1e-9);

    enum class Engine
    {
        EXACT,
        MC,
        MC_UNQUANTIZED,
        CAPACITY,
        HIGH_SNR
    };

    std::string to_string(Engine engine);
    Engine parse_engine(const std::string &name);

    struct MIResult
    {
        double bpcu = 0.0;
        Engine engine = Engine::EXACT;
        double std_error = 0.0;    // bits; 0 for deterministic engines
        std::uint64_t samples = 0; // 0 for deterministic engines
        double wallclock = 0.0;    // seconds
    };

    struct ExactOptions
    {
        std::size_t max_rx = 12; // 4^M accumulator
        int threads = 1;
    };

    struct MonteCarloOptions
    {
        std::uint64_t samples = 200000;
        std::uint64_t seed = 1;
        std::uint64_t stream = 0; // caller-assigned stream label, e.g. per sweep point
        int threads = 1;
    };

    inline constexpr std::uint64_t min_mc_samples = 1000;

    double source_entropy(const InputEnsemble &inputs);

    // H(Y_Q) for an arbitrary quadrant table, by blockwise tensor-product accumulation of p(y_Q).
    // Result does not depend on the thread count.
    double output_entropy(const QuadrantTable &table, const std::vector<double> &priors, int threads = 1);

    // H(Y_Q | X) = sum_x p(x) sum_m H(row(x, m)).
    double conditional_output_entropy(const QuadrantTable &table, const std::vector<double> &priors);

    // I(X; Y_Q) evaluated exactly over all 4^M output patterns; throws std::length_error above max_rx.
    MIResult mi_quantized_exact(const ChannelMatrix &h, const InputEnsemble &inputs, const NoiseModel &noise,
                                const ExactOptions &options = {});

    // Monte-Carlo estimate of E[log2 p(y_Q|x)/p(y_Q)] with exact per-sample probabilities.
    MIResult mi_quantized_mc(const ChannelMatrix &h, const InputEnsemble &inputs, const NoiseModel &noise,
                             const MonteCarloOptions &options);

    // Monte-Carlo estimate of the unquantized I(X; Y) = H(X) - E_y[H(X | Y = y)].
    MIResult mi_unquantized_discrete_mc(const ChannelMatrix &h, const InputEnsemble &inputs, const NoiseModel &noise,
                                        const MonteCarloOptions &options);

    // log2 det(I + H H^H / (N sigma2)).
    MIResult gaussian_capacity(const ChannelMatrix &h, const NoiseModel &noise, std::size_t tx_count);

    // sigma -> 0 limit of I(X; Y_Q) with the 1/2 rule on boundary dimensions.
    MIResult high_snr_mi(const ChannelMatrix &h, const InputEnsemble &inputs, double rel_zero_threshold = 1e-9);

    struct DecodabilityReport
    {
        std::vector<std::pair<std::size_t, std::size_t>> collisions; // (k, k') with k < k', same noiseless pattern
        std::vector<std::size_t> zero_dimension_inputs;              // inputs with a boundary dimension in H x
        std::size_t distinct_patterns = 0;
        std::size_t collided_duplicates = 0; // inputs whose pattern was already taken by an earlier input
    };

    DecodabilityReport unique_decodability_check(const ChannelMatrix &h, const InputEnsemble &inputs,
                                                 double rel_zero_threshold = 1e-9);
} // namespace losq
