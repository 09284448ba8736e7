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
#include "losq/rng.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace losq
{
    using cplx = std::complex<double>;

    enum class ConstellationName
    {
        QAM4,
        QAM16,
        CUSTOM
    };

    // Unit average power, pairwise-distinct symbol alphabet.
    class Constellation
    {
    public:
        static Constellation custom(std::vector<cplx> points);

        ConstellationName name() const { return name_; }
        const std::vector<cplx> &points() const { return points_; }
        std::size_t size() const { return points_.size(); }
        std::string label() const;

    private:
        friend Constellation build_constellation(const std::string &);
        Constellation(ConstellationName name, std::vector<cplx> points);

        ConstellationName name_;
        std::vector<cplx> points_;
    };

    // "qam4" / "4qam" / "qpsk" or "qam16" / "16qam" (case-insensitive). Points are Gray ordered:
    // index k = (in-phase label << b) | quadrature label, each axis label Gray coded.
    Constellation build_constellation(const std::string &name);

    /*!
    All |A|^N transmit vectors with per-antenna scaling 1/sqrt(N) and
    uniform priors, in lexicographic order of constellation indices (the
    first transmit antenna varies slowest). Vectors are stored row-major.
    */
    class InputEnsemble
    {
    public:
        InputEnsemble(std::size_t tx_count, std::vector<cplx> vectors, std::vector<double> priors);

        std::size_t size() const { return priors_.size(); }
        std::size_t tx_count() const { return tx_count_; }
        std::span<const cplx> vector(std::size_t k) const { return {vectors_.data() + k * tx_count_, tx_count_}; }
        const std::vector<double> &priors() const { return priors_; }
        double prior(std::size_t k) const { return priors_[k]; }

        // Exact second-moment matrix sum_k p_k x_k x_k^H.
        Eigen::MatrixXcd covariance() const;

    private:
        std::size_t tx_count_;
        std::vector<cplx> vectors_;
        std::vector<double> priors_;
    };

    inline constexpr std::size_t default_ensemble_cap = 65536;

    InputEnsemble enumerate_inputs(const Constellation &constellation, std::size_t tx_count,
                                   std::size_t cap = default_ensemble_cap);

    // Circularly symmetric complex Gaussian noise, variance sigma2 per receive antenna.
    class NoiseModel
    {
    public:
        explicit NoiseModel(double sigma2);
        static NoiseModel from_snr_db(double snr_db);

        double sigma2() const { return sigma2_; }
        double snr_db() const;
        double real_std() const; // per real dimension

    private:
        double sigma2_;
    };

    /*!
    1-bit I/Q outputs of M receive antennas. Quadrant codes per antenna:
    0 = (+,+), 1 = (+,-), 2 = (-,+), 3 = (-,-) as (real sign, imag sign).
    The packed index is sum_m code_m * 4^(M-1-m).
    */
    class SignVector
    {
    public:
        explicit SignVector(std::vector<std::uint8_t> quadrants);
        static SignVector from_index(std::uint64_t index, std::size_t rx_count);

        std::size_t size() const { return quadrants_.size(); }
        std::uint8_t quadrant(std::size_t m) const { return quadrants_[m]; }
        int real_sign(std::size_t m) const { return (quadrants_[m] & 2) ? -1 : 1; }
        int imag_sign(std::size_t m) const { return (quadrants_[m] & 1) ? -1 : 1; }
        std::uint64_t index() const;

        friend bool operator==(const SignVector &, const SignVector &) = default;

    private:
        std::vector<std::uint8_t> quadrants_;
    };

    inline std::uint8_t quadrant_code(int real_sign, int imag_sign)
    {
        return static_cast<std::uint8_t>((real_sign < 0 ? 2 : 0) | (imag_sign < 0 ? 1 : 0));
    }

    // Componentwise signs; an exact zero maps to +1.
    SignVector quantize_1bit(std::span<const cplx> y);

    // Noiseless receive vector H x.
    std::vector<cplx> mean_received(const ChannelMatrix &h, std::span<const cplx> x);

    // H x plus CN(0, sigma2 I) noise drawn from `rng`.
    std::vector<cplx> sample_received(const ChannelMatrix &h, std::span<const cplx> x, const NoiseModel &noise,
                                      RngStream &rng);
} // namespace losq
