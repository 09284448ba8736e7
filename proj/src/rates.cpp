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
#include "losq/summation.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

namespace losq
{
    MIResult gaussian_capacity(const ChannelMatrix &h, const NoiseModel &noise, std::size_t tx_count)
    {
        if (tx_count == 0 || tx_count != h.tx_count())
            throw std::invalid_argument("gaussian_capacity: transmit antenna count does not match H");
        const auto start = std::chrono::steady_clock::now();

        const auto &mat = h.matrix();
        const auto m = mat.rows();
        const double snr_per_stream = 1.0 / (static_cast<double>(tx_count) * noise.sigma2());
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(m, m) + snr_per_stream * (mat * mat.adjoint());

        Eigen::LLT<Eigen::MatrixXcd> llt(a);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("gaussian_capacity: I + H H^H / (N sigma2) is not positive definite");
        CompensatedSum log_det;
        const auto &l = llt.matrixLLT();
        for (Eigen::Index i = 0; i < m; ++i)
            log_det.add(2.0 * std::log2(l(i, i).real()));

        MIResult result;
        result.engine = Engine::CAPACITY;
        result.bpcu = log_det.value();
        result.wallclock = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    }

    /*
    In the noiseless limit each input maps to a set of 2^z equally likely
    patterns, z being its number of boundary dimensions. The output
    distribution is accumulated sparsely over those patterns.
    */
    MIResult high_snr_mi(const ChannelMatrix &h, const InputEnsemble &inputs, double rel_zero_threshold)
    {
        const auto start = std::chrono::steady_clock::now();
        const std::size_t rx = h.rx_count();
        if (rx > 32)
            throw std::length_error("high_snr_mi: at most 32 receive antennas");

        const auto table = high_snr_quadrant_table(h, inputs, rel_zero_threshold);
        constexpr std::size_t max_support = std::size_t{1} << 26;

        std::map<std::uint64_t, double> p_y;
        std::size_t support = 0;
        for (std::size_t k = 0; k < inputs.size(); ++k)
        {
            const double prior = inputs.prior(k);
            if (prior == 0.0)
                continue;
            // expand the patterns reachable from input k
            std::vector<std::pair<std::uint64_t, double>> partial{{0, prior}};
            for (std::size_t m = 0; m < rx; ++m)
            {
                const auto &row = table.row(k, m);
                std::vector<std::pair<std::uint64_t, double>> next;
                next.reserve(partial.size() * 2);
                for (const auto &[idx, p] : partial)
                    for (std::uint64_t q = 0; q < 4; ++q)
                        if (row[q] > 0.0)
                            next.emplace_back((idx << 2) | q, p * row[q]);
                partial = std::move(next);
            }
            support += partial.size();
            if (support > max_support)
                throw std::length_error("high_snr_mi: output support too large");
            for (const auto &[idx, p] : partial)
                p_y[idx] += p;
        }

        CompensatedSum h_y;
        for (const auto &entry : p_y)
            h_y.add(entropy_term(entry.second));

        MIResult result;
        result.engine = Engine::HIGH_SNR;
        result.bpcu = h_y.value() - conditional_output_entropy(table, inputs.priors());
        if (result.bpcu < 0.0 && result.bpcu > -1e-12)
            result.bpcu = 0.0;
        result.wallclock = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    }

    DecodabilityReport unique_decodability_check(const ChannelMatrix &h, const InputEnsemble &inputs,
                                                 double rel_zero_threshold)
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

        DecodabilityReport report;
        // noiseless pattern per input, boundary dimensions resolved to +1 like the sample quantizer
        std::map<std::vector<std::uint8_t>, std::vector<std::size_t>> groups;
        for (std::size_t k = 0; k < inputs.size(); ++k)
        {
            bool has_zero = false;
            std::vector<std::uint8_t> pattern(h.rx_count());
            for (std::size_t m = 0; m < pattern.size(); ++m)
            {
                const auto v = means[k][m];
                has_zero = has_zero || std::abs(v.real()) <= threshold || std::abs(v.imag()) <= threshold;
                pattern[m] = quadrant_code(v.real() < -threshold ? -1 : 1, v.imag() < -threshold ? -1 : 1);
            }
            if (has_zero)
                report.zero_dimension_inputs.push_back(k);
            groups[pattern].push_back(k);
        }

        report.distinct_patterns = groups.size();
        for (const auto &[pattern, members] : groups)
        {
            report.collided_duplicates += members.size() - 1;
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j)
                    report.collisions.emplace_back(members[i], members[j]);
        }
        std::sort(report.collisions.begin(), report.collisions.end());
        return report;
    }
} // namespace losq
