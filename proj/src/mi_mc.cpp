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
#include "losq/rng.hpp"
#include "losq/summation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace losq
{
    namespace
    {
        constexpr std::uint64_t batch_size = 4096;

        // Rows sorted lexicographically by their entries, so that sample paths do not depend on
        // how the receive antennas are labelled.
        ChannelMatrix canonical_rows(const ChannelMatrix &h)
        {
            const auto &mat = h.matrix();
            std::vector<std::size_t> order(h.rx_count());
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b)
                             {
                for (Eigen::Index n = 0; n < mat.cols(); ++n)
                {
                    const auto x = mat(Eigen::Index(a), n);
                    const auto y = mat(Eigen::Index(b), n);
                    if (x.real() != y.real())
                        return x.real() < y.real();
                    if (x.imag() != y.imag())
                        return x.imag() < y.imag();
                }
                return false; });
            return h.rows_permuted(order);
        }

        std::size_t draw_index(const std::vector<double> &cumulative, double u)
        {
            const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
            return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
        }

        std::vector<double> cumulative_of(const std::vector<double> &p)
        {
            std::vector<double> c(p.size());
            std::partial_sum(p.begin(), p.end(), c.begin());
            return c;
        }

        struct BatchMoments
        {
            CompensatedSum sum;
            CompensatedSum sum_sq;
        };

        // Runs `sample(rng)` `total` times over fixed-size batches with per-batch streams and
        // combines the moments in batch order.
        template <typename SampleFn>
        MIResult run_batches(const MonteCarloOptions &options, Engine engine, SampleFn &&sample)
        {
            if (options.samples < min_mc_samples)
                throw std::invalid_argument("Monte-Carlo engines need at least " + std::to_string(min_mc_samples) +
                                            " samples");
            const auto start = std::chrono::steady_clock::now();
            const std::uint64_t total = options.samples;
            const std::size_t batches = static_cast<std::size_t>((total + batch_size - 1) / batch_size);
            std::vector<BatchMoments> moments(batches);

            parallel_for(batches, options.threads, [&](std::size_t b)
                         {
                auto rng = RngStream::derive(options.seed, {options.stream, std::uint64_t(b)});
                const std::uint64_t first = std::uint64_t(b) * batch_size;
                const std::uint64_t count = std::min(batch_size, total - first);
                for (std::uint64_t i = 0; i < count; ++i)
                {
                    const double v = sample(rng);
                    moments[b].sum.add(v);
                    moments[b].sum_sq.add(v * v);
                } });

            CompensatedSum sum, sum_sq;
            for (const auto &m : moments)
            {
                sum.add(m.sum.value());
                sum_sq.add(m.sum_sq.value());
            }
            const double n = static_cast<double>(total);
            const double mean = sum.value() / n;
            const double var = std::max(0.0, (sum_sq.value() - n * mean * mean) / (n - 1.0));

            MIResult result;
            result.engine = engine;
            result.bpcu = mean;
            result.std_error = std::sqrt(var / n);
            result.samples = total;
            result.wallclock = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return result;
        }
    } // namespace

    MIResult mi_quantized_mc(const ChannelMatrix &h, const InputEnsemble &inputs, const NoiseModel &noise,
                             const MonteCarloOptions &options)
    {
        const auto canon = canonical_rows(h);
        const auto table = build_quadrant_table(canon, inputs, noise);
        const std::size_t rx = table.rx_count();
        const std::size_t count = table.input_count();
        const auto &priors = inputs.priors();
        const auto prior_cdf = cumulative_of(priors);

        std::vector<std::array<double, 4>> row_cdf(count * rx);
        for (std::size_t k = 0; k < count; ++k)
            for (std::size_t m = 0; m < rx; ++m)
            {
                const auto &r = table.row(k, m);
                row_cdf[k * rx + m] = {r[0], r[0] + r[1], r[0] + r[1] + r[2], 1.0};
            }

        return run_batches(options, Engine::MC, [&](RngStream &rng)
                           {
            thread_local std::vector<std::uint8_t> y;
            y.resize(rx);
            const std::size_t k = draw_index(prior_cdf, rng.uniform());
            double p_cond = 1.0;
            for (std::size_t m = 0; m < rx; ++m)
            {
                const auto &c = row_cdf[k * rx + m];
                const double u = rng.uniform();
                std::uint8_t q = 0;
                while (q < 3 && !(u < c[q]))
                    ++q;
                y[m] = q;
                p_cond *= table.row(k, m)[q];
            }
            double p_y = 0.0;
            for (std::size_t j = 0; j < count; ++j)
            {
                double p = priors[j];
                for (std::size_t m = 0; m < rx && p != 0.0; ++m)
                    p *= table.row(j, m)[y[m]];
                p_y += p;
            }
            return std::log2(p_cond) - std::log2(p_y); });
    }

    MIResult mi_unquantized_discrete_mc(const ChannelMatrix &h, const InputEnsemble &inputs, const NoiseModel &noise,
                                        const MonteCarloOptions &options)
    {
        const auto canon = canonical_rows(h);
        const std::size_t rx = canon.rx_count();
        const std::size_t count = inputs.size();
        const auto &priors = inputs.priors();
        const auto prior_cdf = cumulative_of(priors);
        const double h_x = source_entropy(inputs);
        const double sigma2 = noise.sigma2();
        const double s = noise.real_std();

        std::vector<cplx> means(count * rx);
        std::vector<double> log_prior(count);
        for (std::size_t k = 0; k < count; ++k)
        {
            const auto mu = mean_received(canon, inputs.vector(k));
            std::copy(mu.begin(), mu.end(), means.begin() + std::ptrdiff_t(k * rx));
            log_prior[k] = priors[k] > 0.0 ? std::log(priors[k]) : -std::numeric_limits<double>::infinity();
        }

        return run_batches(options, Engine::MC_UNQUANTIZED, [&](RngStream &rng)
                           {
            thread_local std::vector<cplx> y;
            thread_local std::vector<double> logits;
            y.resize(rx);
            logits.resize(count);

            const std::size_t k = draw_index(prior_cdf, rng.uniform());
            for (std::size_t m = 0; m < rx; ++m)
            {
                const double re = rng.normal();
                const double im = rng.normal();
                y[m] = means[k * rx + m] + cplx(s * re, s * im);
            }

            double top = -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < count; ++j)
            {
                double d = 0.0;
                for (std::size_t m = 0; m < rx; ++m)
                    d += std::norm(y[m] - means[j * rx + m]);
                logits[j] = log_prior[j] - d / sigma2;
                top = std::max(top, logits[j]);
            }
            // posterior entropy in nats: log Z - sum_j w_j a_j / Z with a_j = logit_j - max
            double z = 0.0, za = 0.0;
            for (std::size_t j = 0; j < count; ++j)
            {
                if (priors[j] == 0.0)
                    continue;
                const double a = logits[j] - top;
                const double w = std::exp(a);
                z += w;
                za += w * a;
            }
            const double h_post = (std::log(z) - za / z) / std::log(2.0);
            return h_x - h_post; });
    }
} // namespace losq
