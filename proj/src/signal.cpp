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

#include "losq/signal.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace losq
{
    namespace
    {
        constexpr double power_tolerance = 1e-12;

        // Gray-coded PAM levels {-(L-1), ..., L-1} indexed by label.
        std::vector<double> gray_pam(std::size_t levels)
        {
            std::vector<double> out(levels);
            for (std::size_t i = 0; i < levels; ++i)
            {
                const std::size_t gray = i ^ (i >> 1);
                out[gray] = 2.0 * static_cast<double>(i) - static_cast<double>(levels - 1);
            }
            return out;
        }

        std::vector<cplx> square_qam(std::size_t order)
        {
            const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(order))));
            std::size_t bits = 0;
            while ((std::size_t{1} << bits) < side)
                ++bits;
            const auto pam = gray_pam(side);

            std::vector<cplx> pts(order);
            double power = 0.0;
            for (std::size_t k = 0; k < order; ++k)
            {
                pts[k] = {pam[k >> bits], pam[k & (side - 1)]};
                power += std::norm(pts[k]);
            }
            const double scale = 1.0 / std::sqrt(power / static_cast<double>(order));
            for (auto &p : pts)
                p *= scale;
            return pts;
        }
    } // namespace

    Constellation::Constellation(ConstellationName name, std::vector<cplx> points)
        : name_(name), points_(std::move(points))
    {
        if (points_.empty())
            throw std::invalid_argument("Constellation: no points");
        double power = 0.0;
        for (std::size_t i = 0; i < points_.size(); ++i)
        {
            if (!std::isfinite(points_[i].real()) || !std::isfinite(points_[i].imag()))
                throw std::invalid_argument("Constellation: non-finite point");
            power += std::norm(points_[i]);
            for (std::size_t j = 0; j < i; ++j)
                if (points_[i] == points_[j])
                    throw std::invalid_argument("Constellation: duplicate points");
        }
        power /= static_cast<double>(points_.size());
        if (std::abs(power - 1.0) > power_tolerance)
            throw std::invalid_argument("Constellation: average power must be 1");
    }

    Constellation Constellation::custom(std::vector<cplx> points)
    {
        return Constellation(ConstellationName::CUSTOM, std::move(points));
    }

    std::string Constellation::label() const
    {
        switch (name_)
        {
        case ConstellationName::QAM4:
            return "qam4";
        case ConstellationName::QAM16:
            return "qam16";
        case ConstellationName::CUSTOM:
            break;
        }
        return "custom" + std::to_string(points_.size());
    }

    Constellation build_constellation(const std::string &name)
    {
        std::string key(name);
        std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c)
                       { return static_cast<char>(std::tolower(c)); });
        key.erase(std::remove(key.begin(), key.end(), '-'), key.end());
        if (key == "qam4" || key == "4qam" || key == "qpsk")
            return Constellation(ConstellationName::QAM4, square_qam(4));
        if (key == "qam16" || key == "16qam")
            return Constellation(ConstellationName::QAM16, square_qam(16));
        throw std::invalid_argument("unknown constellation '" + name + "'");
    }

    InputEnsemble::InputEnsemble(std::size_t tx_count, std::vector<cplx> vectors, std::vector<double> priors)
        : tx_count_(tx_count), vectors_(std::move(vectors)), priors_(std::move(priors))
    {
        if (tx_count_ == 0 || priors_.empty() || vectors_.size() != tx_count_ * priors_.size())
            throw std::invalid_argument("InputEnsemble: inconsistent sizes");
        double total = 0.0;
        for (double p : priors_)
        {
            if (!(p >= 0.0))
                throw std::invalid_argument("InputEnsemble: negative prior");
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw std::invalid_argument("InputEnsemble: priors must sum to 1");
    }

    Eigen::MatrixXcd InputEnsemble::covariance() const
    {
        const auto n = Eigen::Index(tx_count_);
        Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(n, n);
        for (std::size_t k = 0; k < size(); ++k)
        {
            const auto x = vector(k);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j)
                    cov(i, j) += priors_[k] * x[std::size_t(i)] * std::conj(x[std::size_t(j)]);
        }
        return cov;
    }

    InputEnsemble enumerate_inputs(const Constellation &constellation, std::size_t tx_count, std::size_t cap)
    {
        if (tx_count == 0)
            throw std::invalid_argument("enumerate_inputs: need at least one transmit antenna");
        const std::size_t q = constellation.size();
        std::size_t total = 1;
        for (std::size_t n = 0; n < tx_count; ++n)
        {
            if (total > cap / q)
                throw std::length_error("enumerate_inputs: |A|^N exceeds the ensemble cap of " + std::to_string(cap));
            total *= q;
        }

        const double scale = 1.0 / std::sqrt(static_cast<double>(tx_count));
        std::vector<cplx> vectors(total * tx_count);
        for (std::size_t k = 0; k < total; ++k)
        {
            std::size_t rest = k;
            for (std::size_t n = tx_count; n-- > 0;)
            {
                vectors[k * tx_count + n] = constellation.points()[rest % q] * scale;
                rest /= q;
            }
        }
        return InputEnsemble(tx_count, std::move(vectors), std::vector<double>(total, 1.0 / static_cast<double>(total)));
    }

    NoiseModel::NoiseModel(double sigma2) : sigma2_(sigma2)
    {
        if (!(sigma2_ > 0.0) || !std::isfinite(sigma2_))
            throw std::invalid_argument("NoiseModel: sigma2 must be positive and finite");
    }

    NoiseModel NoiseModel::from_snr_db(double snr_db)
    {
        return NoiseModel(std::pow(10.0, -snr_db / 10.0));
    }

    double NoiseModel::snr_db() const { return 10.0 * std::log10(1.0 / sigma2_); }

    double NoiseModel::real_std() const { return std::sqrt(0.5 * sigma2_); }

    SignVector::SignVector(std::vector<std::uint8_t> quadrants) : quadrants_(std::move(quadrants))
    {
        for (auto q : quadrants_)
            if (q > 3)
                throw std::invalid_argument("SignVector: quadrant code out of range");
    }

    SignVector SignVector::from_index(std::uint64_t index, std::size_t rx_count)
    {
        if (rx_count > 32)
            throw std::invalid_argument("SignVector: packed index supports at most 32 antennas");
        if (rx_count < 32 && index >> (2 * rx_count) != 0)
            throw std::invalid_argument("SignVector: index out of range");
        std::vector<std::uint8_t> q(rx_count);
        for (std::size_t m = rx_count; m-- > 0;)
        {
            q[m] = static_cast<std::uint8_t>(index & 3u);
            index >>= 2;
        }
        return SignVector(std::move(q));
    }

    std::uint64_t SignVector::index() const
    {
        if (quadrants_.size() > 32)
            throw std::logic_error("SignVector: packed index supports at most 32 antennas");
        std::uint64_t idx = 0;
        for (auto q : quadrants_)
            idx = (idx << 2) | q;
        return idx;
    }

    SignVector quantize_1bit(std::span<const cplx> y)
    {
        std::vector<std::uint8_t> q(y.size());
        for (std::size_t m = 0; m < y.size(); ++m)
            q[m] = quadrant_code(y[m].real() < 0.0 ? -1 : 1, y[m].imag() < 0.0 ? -1 : 1);
        return SignVector(std::move(q));
    }

    std::vector<cplx> mean_received(const ChannelMatrix &h, std::span<const cplx> x)
    {
        if (x.size() != h.tx_count())
            throw std::invalid_argument("dimension mismatch: x has " + std::to_string(x.size()) + " entries, H has " +
                                        std::to_string(h.tx_count()) + " columns");
        std::vector<cplx> mu(h.rx_count());
        for (std::size_t m = 0; m < mu.size(); ++m)
        {
            cplx acc = 0.0;
            for (std::size_t n = 0; n < x.size(); ++n)
                acc += h(m, n) * x[n];
            mu[m] = acc;
        }
        return mu;
    }

    std::vector<cplx> sample_received(const ChannelMatrix &h, std::span<const cplx> x, const NoiseModel &noise,
                                      RngStream &rng)
    {
        auto y = mean_received(h, x);
        const double s = noise.real_std();
        for (auto &v : y)
        {
            const double re = rng.normal();
            const double im = rng.normal();
            v += cplx(s * re, s * im);
        }
        return y;
    }
} // namespace losq
