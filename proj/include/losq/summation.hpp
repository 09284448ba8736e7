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

#include <cmath>
#include <span>

namespace losq
{
    // Neumaier-compensated running sum.
    class CompensatedSum
    {
    public:
        void add(double value)
        {
            const double t = sum_ + value;
            if (std::abs(sum_) >= std::abs(value))
                carry_ += (sum_ - t) + value;
            else
                carry_ += (value - t) + sum_;
            sum_ = t;
        }

        CompensatedSum &operator+=(double value)
        {
            add(value);
            return *this;
        }

        double value() const { return sum_ + carry_; }

    private:
        double sum_ = 0.0;
        double carry_ = 0.0;
    };

    inline double compensated_sum(std::span<const double> values)
    {
        CompensatedSum acc;
        for (double v : values)
            acc.add(v);
        return acc.value();
    }

    // -p log2 p with 0 log 0 = 0
    inline double entropy_term(double p)
    {
        return p > 0.0 ? -p * std::log2(p) : 0.0;
    }

    // Entropy in bits of a probability vector (not renormalized).
    inline double entropy_bits(std::span<const double> probs)
    {
        CompensatedSum acc;
        for (double p : probs)
            acc.add(entropy_term(p));
        return acc.value();
    }
} // namespace losq
