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

// Test-only reference computations, independent of the library's engines.

#pragma once

#include "losq/geometry.hpp"
#include "losq/signal.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace losq::oracle
{
    inline double normal_cdf(double z)
    {
        return 0.5 * (1.0 + std::erf(z / std::numbers::sqrt2));
    }

    // Probability that a N(mean, s^2) variable falls in [lo, hi] (infinite bounds allowed).
    inline double interval_probability(double lo, double hi, double mean, double s)
    {
        const double upper = std::isinf(hi) ? 1.0 : normal_cdf((hi - mean) / s);
        const double lower = std::isinf(lo) ? 0.0 : normal_cdf((lo - mean) / s);
        return upper - lower;
    }

    /*
    Direct evaluation of sum_{x, y_Q} p(x) p(y_Q|x) log2(p(y_Q|x) / p(y_Q)),
    each p(y_Q|x) integrated from the per-antenna integration limits:
    (+,+): re in [0, inf), im in [0, inf); (+,-): re in [0, inf), im in (-inf, 0]; ...
    */
    inline double naive_quantized_mi(const ChannelMatrix &h, const InputEnsemble &inputs, double sigma2)
    {
        const double inf = std::numeric_limits<double>::infinity();
        const double s = std::sqrt(sigma2 / 2.0);
        const std::size_t rx = h.rx_count();
        const std::size_t patterns = std::size_t{1} << (2 * rx);

        std::vector<std::vector<cplx>> mu;
        for (std::size_t k = 0; k < inputs.size(); ++k)
            mu.push_back(mean_received(h, inputs.vector(k)));

        std::vector<std::vector<double>> cond(inputs.size(), std::vector<double>(patterns));
        for (std::size_t k = 0; k < inputs.size(); ++k)
            for (std::size_t y = 0; y < patterns; ++y)
            {
                double p = 1.0;
                for (std::size_t m = 0; m < rx; ++m)
                {
                    const auto code = (y >> (2 * (rx - 1 - m))) & 3u;
                    const bool re_neg = code & 2u, im_neg = code & 1u;
                    p *= interval_probability(re_neg ? -inf : 0.0, re_neg ? 0.0 : inf, mu[k][m].real(), s);
                    p *= interval_probability(im_neg ? -inf : 0.0, im_neg ? 0.0 : inf, mu[k][m].imag(), s);
                }
                cond[k][y] = p;
            }

        double mi = 0.0;
        for (std::size_t y = 0; y < patterns; ++y)
        {
            double py = 0.0;
            for (std::size_t k = 0; k < inputs.size(); ++k)
                py += inputs.prior(k) * cond[k][y];
            for (std::size_t k = 0; k < inputs.size(); ++k)
            {
                const double joint = inputs.prior(k) * cond[k][y];
                if (joint > 0.0)
                    mi += joint * std::log2(cond[k][y] / py);
            }
        }
        return mi;
    }

    // Composite Simpson rule for a 2D integrand over [a, b] x [c, d].
    inline double simpson_2d(const std::function<double(double, double)> &f, double a, double b, double c, double d,
                             int n)
    {
        if (n % 2)
            ++n;
        const double hx = (b - a) / n, hy = (d - c) / n;
        const auto weight = [n](int i)
        { return (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0); };
        double acc = 0.0;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                acc += weight(i) * weight(j) * f(a + i * hx, c + j * hy);
        return acc * hx * hy / 9.0;
    }
} // namespace losq::oracle
