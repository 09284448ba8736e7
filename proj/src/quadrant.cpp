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

#include "losq/infotheory.hpp"
#include "losq/parallel.hpp"
#include "losq/summation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace losq
{
    double half_line_probability(double mean, double std_dev)
    {
        // erfc keeps the far tail accurate where 1 - Phi would cancel
        return 0.5 * std::erfc(-mean / (std_dev * std::sqrt(2.0)));
    }

    QuadrantRow quadrant_probabilities(cplx mean, double sigma2)
    {
        if (!(sigma2 > 0.0))
            throw std::invalid_argument("quadrant_probabilities: sigma2 must be positive (use high_snr_mi for the noiseless limit)");
        const double s = std::sqrt(0.5 * sigma2);
        const double re_pos = half_line_probability(mean.real(), s);
        const double re_neg = half_line_probability(-mean.real(), s);
        const double im_pos = half_line_probability(mean.imag(), s);
        const double im_neg = half_line_probability(-mean.imag(), s);
        return {re_pos * im_pos, re_pos * im_neg, re_neg * im_pos, re_neg * im_neg};
    }

    double quadrant_entropy(const QuadrantRow &row)
    {
        return entropy_bits(row);
    }

    QuadrantTable::QuadrantTable(std::size_t input_count, std::size_t rx_count)
        : input_count_(input_count), rx_count_(rx_count), rows_(input_count * rx_count)
    {
        if (input_count_ == 0 || rx_count_ == 0)
            throw std::invalid_argument("QuadrantTable: empty dimensions");
    }

    double QuadrantTable::conditional(std::size_t k, const SignVector &y) const
    {
        if (y.size() != rx_count_)
            throw std::invalid_argument("QuadrantTable::conditional: pattern length mismatch");
        double p = 1.0;
        for (std::size_t m = 0; m < rx_count_; ++m)
            p *= row(k, m)[y.quadrant(m)];
        return p;
    }

    QuadrantTable build_quadrant_table(const ChannelMatrix &h, const InputEnsemble &inputs, const NoiseModel &noise)
    {
        QuadrantTable table(inputs.size(), h.rx_count());
        for (std::size_t k = 0; k < inputs.size(); ++k)
        {
            const auto mu = mean_received(h, inputs.vector(k));
            for (std::size_t m = 0; m < mu.size(); ++m)
                table.row(k, m) = quadrant_probabilities(mu[m], noise.sigma2());
        }
        return table;
    }

    QuadrantTable high_snr_quadrant_table(const ChannelMatrix &h, const InputEnsemble &inputs, double rel_zero_threshold)
    {
        std::vector<std::vector<cplx>> means(inputs.size());
        double scale = 0.0;
        for (std::size_t k = 0; k < inputs.size(); ++k)
        {
            means[k] = mean_received(h, inputs.vector(k));
            for (const auto &v : means[k])
                scale = std::max({scale, std::abs(v.real()), std::abs(v.imag())});
        }
        const double threshold = rel_zero_threshold * scale;
        const auto dirac = [threshold](double v) -> std::array<double, 2>
        {
            if (std::abs(v) <= threshold)
                return {0.5, 0.5};
            return v > 0.0 ? std::array<double, 2>{1.0, 0.0} : std::array<double, 2>{0.0, 1.0};
        };

        QuadrantTable table(inputs.size(), h.rx_count());
        for (std::size_t k = 0; k < inputs.size(); ++k)
            for (std::size_t m = 0; m < h.rx_count(); ++m)
            {
                const auto re = dirac(means[k][m].real());
                const auto im = dirac(means[k][m].imag());
                table.row(k, m) = {re[0] * im[0], re[0] * im[1], re[1] * im[0], re[1] * im[1]};
            }
        return table;
    }

    std::string to_string(Engine engine)
    {
        switch (engine)
        {
        case Engine::EXACT:
            return "exact";
        case Engine::MC:
            return "mc";
        case Engine::MC_UNQUANTIZED:
            return "mc_unquantized";
        case Engine::CAPACITY:
            return "capacity";
        case Engine::HIGH_SNR:
            return "high_snr";
        }
        return "unknown";
    }

    Engine parse_engine(const std::string &name)
    {
        for (auto e : {Engine::EXACT, Engine::MC, Engine::MC_UNQUANTIZED, Engine::CAPACITY, Engine::HIGH_SNR})
            if (to_string(e) == name)
                return e;
        throw std::invalid_argument("unknown engine '" + name + "'");
    }

    double source_entropy(const InputEnsemble &inputs)
    {
        return entropy_bits(inputs.priors());
    }

    double conditional_output_entropy(const QuadrantTable &table, const std::vector<double> &priors)
    {
        CompensatedSum acc;
        for (std::size_t k = 0; k < table.input_count(); ++k)
        {
            if (priors[k] == 0.0)
                continue;
            CompensatedSum per_input;
            for (std::size_t m = 0; m < table.rx_count(); ++m)
                per_input.add(quadrant_entropy(table.row(k, m)));
            acc.add(priors[k] * per_input.value());
        }
        return acc.value();
    }

    /*
    The 4^M output patterns are split into 4^P blocks by the quadrants of the
    first P antennas. Within a block, p(y_Q) for the remaining L = M - P
    antennas is accumulated input by input: the per-input tensor product of
    quadrant rows is grown one antenna at a time, and the last antenna is
    fused into the accumulation. Each block is owned by one task and summed
    over inputs in ensemble order, so the result is independent of threads.
    */
    double output_entropy(const QuadrantTable &table, const std::vector<double> &priors, int threads)
    {
        const std::size_t rx = table.rx_count();
        const std::size_t inputs = table.input_count();
        if (priors.size() != inputs)
            throw std::invalid_argument("output_entropy: prior count mismatch");
        if (rx > 24)
            throw std::length_error("output_entropy: too many receive antennas for exhaustive evaluation");

        const std::size_t prefix = std::min<std::size_t>(rx, 3);
        const std::size_t suffix = rx - prefix;
        const std::size_t blocks = std::size_t{1} << (2 * prefix);
        const std::size_t block_size = std::size_t{1} << (2 * suffix);

        std::vector<double> block_entropy(blocks, 0.0);
        parallel_for(blocks, threads, [&](std::size_t b)
                     {
            std::vector<double> acc(block_size, 0.0);
            std::vector<double> tensor(suffix > 0 ? block_size / 4 : 1);
            std::vector<std::uint8_t> digits(prefix);
            for (std::size_t m = prefix, rest = b; m-- > 0; rest >>= 2)
                digits[m] = static_cast<std::uint8_t>(rest & 3u);

            for (std::size_t k = 0; k < inputs; ++k)
            {
                double w = priors[k];
                for (std::size_t m = 0; m < prefix && w != 0.0; ++m)
                    w *= table.row(k, m)[digits[m]];
                if (w == 0.0)
                    continue;
                if (suffix == 0)
                {
                    acc[0] += w;
                    continue;
                }

                tensor[0] = w;
                std::size_t size = 1;
                for (std::size_t m = prefix; m + 1 < rx; ++m)
                {
                    const auto &r = table.row(k, m);
                    for (std::size_t i = size; i-- > 0;)
                    {
                        const double v = tensor[i];
                        tensor[4 * i + 3] = v * r[3];
                        tensor[4 * i + 2] = v * r[2];
                        tensor[4 * i + 1] = v * r[1];
                        tensor[4 * i] = v * r[0];
                    }
                    size *= 4;
                }
                const auto &last = table.row(k, rx - 1);
                for (std::size_t i = 0; i < size; ++i)
                {
                    const double v = tensor[i];
                    double *out = acc.data() + 4 * i;
                    out[0] += v * last[0];
                    out[1] += v * last[1];
                    out[2] += v * last[2];
                    out[3] += v * last[3];
                }
            }
            block_entropy[b] = entropy_bits(acc); });

        return compensated_sum(block_entropy);
    }

    MIResult mi_quantized_exact(const ChannelMatrix &h, const InputEnsemble &inputs, const NoiseModel &noise,
                                const ExactOptions &options)
    {
        if (h.rx_count() > options.max_rx)
            throw std::length_error("mi_quantized_exact: M = " + std::to_string(h.rx_count()) +
                                    " exceeds the exact-engine cap of " + std::to_string(options.max_rx) +
                                    "; use the Monte-Carlo engine");
        const auto start = std::chrono::steady_clock::now();

        const auto table = build_quadrant_table(h, inputs, noise);
        const double h_y = output_entropy(table, inputs.priors(), options.threads);
        const double h_y_given_x = conditional_output_entropy(table, inputs.priors());

        MIResult result;
        result.engine = Engine::EXACT;
        result.bpcu = h_y - h_y_given_x;
        if (result.bpcu < 0.0 && result.bpcu > -1e-12)
            result.bpcu = 0.0;
        result.wallclock = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    }
} // namespace losq
