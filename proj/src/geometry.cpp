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

#include "losq/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace losq
{
    namespace
    {
        constexpr double coordinate_tolerance = 1e-12;
        constexpr double unit_modulus_tolerance = 1e-12;
        constexpr double packing_distance_tolerance = 1e-9;

        std::string lower(std::string s)
        {
            std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c)
                           { return static_cast<char>(std::tolower(c)); });
            return s;
        }

        std::size_t integer_sqrt(std::size_t n)
        {
            auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
            while (r * r > n)
                --r;
            while ((r + 1) * (r + 1) <= n)
                ++r;
            return r;
        }
    } // namespace

    std::string to_string(ArrayKind kind)
    {
        switch (kind)
        {
        case ArrayKind::ULA:
            return "ula";
        case ArrayKind::URA:
            return "ura";
        case ArrayKind::PACKED:
            return "packed";
        case ArrayKind::CUSTOM:
            return "custom";
        }
        return "unknown";
    }

    ArrayKind parse_array_kind(const std::string &name)
    {
        const std::string key = lower(name);
        if (key == "ula")
            return ArrayKind::ULA;
        if (key == "ura")
            return ArrayKind::URA;
        if (key == "packed")
            return ArrayKind::PACKED;
        if (key == "custom")
            return ArrayKind::CUSTOM;
        throw std::invalid_argument("unknown array kind '" + name + "'");
    }

    double min_pairwise_distance(const std::vector<Point2> &points)
    {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                best = std::min(best, std::hypot(points[i].u - points[j].u, points[i].v - points[j].v));
        return best;
    }

    AntennaArray::AntennaArray(std::vector<Point2> positions, double aperture, ArrayKind kind)
        : positions_(std::move(positions)), aperture_(aperture), kind_(kind)
    {
        if (positions_.empty())
            throw std::invalid_argument("AntennaArray: no antennas");
        if (!(aperture_ > 0.0) || !std::isfinite(aperture_))
            throw std::invalid_argument("AntennaArray: aperture must be positive");
        if (positions_.size() > 1 && !(min_pairwise_distance(positions_) > 0.0))
            throw std::invalid_argument("AntennaArray: antenna positions must be distinct");

        const double half = 0.5 * aperture_ + coordinate_tolerance;
        for (const auto &p : positions_)
        {
            if (!std::isfinite(p.u) || !std::isfinite(p.v))
                throw std::invalid_argument("AntennaArray: non-finite coordinate");
            if (std::abs(p.u) > half || std::abs(p.v) > half)
                throw std::invalid_argument("AntennaArray: antenna outside the declared aperture");
        }

        if (kind_ == ArrayKind::ULA)
        {
            for (const auto &p : positions_)
                if (p.v != 0.0)
                    throw std::invalid_argument("AntennaArray: ULA antennas must lie on the u axis");
            if (positions_.size() > 2)
            {
                const double step = positions_[1].u - positions_[0].u;
                for (std::size_t i = 2; i < positions_.size(); ++i)
                    if (std::abs((positions_[i].u - positions_[i - 1].u) - step) > coordinate_tolerance)
                        throw std::invalid_argument("AntennaArray: ULA spacing must be constant");
            }
        }
    }

    AntennaArray AntennaArray::translated(double du, double dv) const
    {
        std::vector<Point2> moved = positions_;
        double extent = aperture_;
        for (auto &p : moved)
        {
            p.u += du;
            p.v += dv;
            extent = std::max(extent, 2.0 * std::max(std::abs(p.u), std::abs(p.v)));
        }
        return AntennaArray(std::move(moved), extent, ArrayKind::CUSTOM);
    }

    AntennaArray ula_positions(double aperture, std::size_t count)
    {
        if (!(aperture > 0.0))
            throw std::invalid_argument("ula_positions: aperture must be positive");
        if (count == 0)
            throw std::invalid_argument("ula_positions: count must be at least 1");

        std::vector<Point2> pos(count);
        if (count > 1)
        {
            const double spacing = aperture / static_cast<double>(count - 1);
            for (std::size_t i = 0; i < count; ++i)
                pos[i].u = -0.5 * aperture + spacing * static_cast<double>(i);
            pos.back().u = 0.5 * aperture;
        }
        return AntennaArray(std::move(pos), aperture, ArrayKind::ULA);
    }

    AntennaArray ura_positions(double aperture, std::size_t count)
    {
        if (!(aperture > 0.0))
            throw std::invalid_argument("ura_positions: aperture must be positive");
        const std::size_t side = integer_sqrt(count);
        if (count == 0 || side * side != count)
            throw std::invalid_argument("ura_positions: count must be a positive perfect square");

        const auto line = ula_positions(aperture, side);
        std::vector<Point2> pos;
        pos.reserve(count);
        for (std::size_t i = 0; i < side; ++i)
            for (std::size_t j = 0; j < side; ++j)
                pos.push_back({line[i].u, line[j].u});
        return AntennaArray(std::move(pos), aperture, ArrayKind::URA);
    }

    // ---------------------------------------------------------------------------------------------
    // Packing catalog

    PackingCatalog PackingCatalog::parse(std::istream &in)
    {
        PackingCatalog catalog;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos)
                continue;
            std::istringstream fields(line.substr(first));
            if (line[first] == '#')
            {
                std::string hash, tag;
                fields >> hash >> tag;
                if (hash == "#" && tag == "dmin")
                {
                    std::size_t m = 0;
                    double d = 0.0;
                    if (!(fields >> m >> d))
                        throw std::runtime_error("packing catalog line " + std::to_string(line_no) + ": malformed dmin");
                    catalog.declared_[m] = d;
                }
                continue;
            }

            std::size_t m = 0;
            if (!(fields >> m) || m == 0)
                throw std::runtime_error("packing catalog line " + std::to_string(line_no) + ": bad point count");
            std::vector<Point2> pts(m);
            for (auto &p : pts)
                if (!(fields >> p.u >> p.v))
                    throw std::runtime_error("packing catalog line " + std::to_string(line_no) + ": expected " +
                                             std::to_string(2 * m) + " coordinates");
            std::string extra;
            if (fields >> extra)
                throw std::runtime_error("packing catalog line " + std::to_string(line_no) + ": trailing data");
            if (catalog.entries_.count(m))
                throw std::runtime_error("packing catalog line " + std::to_string(line_no) + ": duplicate record for M = " +
                                         std::to_string(m));
            catalog.insert(m, std::move(pts));
        }

        for (const auto &[m, d] : catalog.declared_)
        {
            if (!catalog.contains(m))
                continue;
            const double actual = min_pairwise_distance(catalog.entries_.at(m));
            if (std::abs(actual - d) > packing_distance_tolerance)
                throw std::runtime_error("packing catalog: M = " + std::to_string(m) + " has minimum distance " +
                                         std::to_string(actual) + ", declared " + std::to_string(d));
        }
        return catalog;
    }

    PackingCatalog PackingCatalog::load(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open packing catalog " + path.string());
        return parse(in);
    }

    void PackingCatalog::insert(std::size_t count, std::vector<Point2> unit_points)
    {
        if (count == 0 || unit_points.size() != count)
            throw std::invalid_argument("PackingCatalog: record size does not match point count");
        for (const auto &p : unit_points)
            if (!(p.u >= 0.0 && p.u <= 1.0 && p.v >= 0.0 && p.v <= 1.0))
                throw std::invalid_argument("PackingCatalog: coordinates must lie in [0, 1]^2");
        if (count > 1 && !(min_pairwise_distance(unit_points) > 0.0))
            throw std::invalid_argument("PackingCatalog: duplicate points for M = " + std::to_string(count));
        entries_[count] = std::move(unit_points);
    }

    const std::vector<Point2> &PackingCatalog::at(std::size_t count) const
    {
        const auto it = entries_.find(count);
        if (it == entries_.end())
            throw std::out_of_range("packing catalog has no entry for M = " + std::to_string(count));
        return it->second;
    }

    std::optional<double> PackingCatalog::declared_min_distance(std::size_t count) const
    {
        const auto it = declared_.find(count);
        if (it == declared_.end())
            return std::nullopt;
        return it->second;
    }

    std::vector<std::size_t> PackingCatalog::counts() const
    {
        std::vector<std::size_t> out;
        for (const auto &entry : entries_)
            out.push_back(entry.first);
        return out;
    }

    const PackingCatalog &PackingCatalog::builtin()
    {
        static const PackingCatalog catalog = []
        {
            const char *dir = std::getenv("LOSQ_DATA_DIR");
            return load(std::filesystem::path(dir && *dir ? dir : LOSQ_DATA_DIR) / "packings.txt");
        }();
        return catalog;
    }

    AntennaArray packed_positions(double aperture, std::size_t count, const PackingCatalog &catalog)
    {
        if (!(aperture > 0.0))
            throw std::invalid_argument("packed_positions: aperture must be positive");
        const auto &unit = catalog.at(count);
        std::vector<Point2> pos;
        pos.reserve(unit.size());
        for (const auto &p : unit)
            pos.push_back({(p.u - 0.5) * aperture, (p.v - 0.5) * aperture});
        return AntennaArray(std::move(pos), aperture, ArrayKind::PACKED);
    }

    // ---------------------------------------------------------------------------------------------
    // Channel

    void LinkGeometry::validate() const
    {
        if (!(distance > 0.0) || !std::isfinite(distance))
            throw std::invalid_argument("LinkGeometry: distance must be positive");
        if (!(wavelength > 0.0) || !std::isfinite(wavelength))
            throw std::invalid_argument("LinkGeometry: wavelength must be positive");
    }

    ChannelMatrix::ChannelMatrix(Matrix entries) : h_(std::move(entries))
    {
        if (h_.size() == 0)
            throw std::invalid_argument("ChannelMatrix: empty matrix");
        for (Eigen::Index i = 0; i < h_.size(); ++i)
            if (std::abs(std::abs(h_.data()[i]) - 1.0) > unit_modulus_tolerance)
                throw std::invalid_argument("ChannelMatrix: entries must have unit modulus");
    }

    ChannelMatrix ChannelMatrix::unchecked(Matrix entries)
    {
        return ChannelMatrix(std::move(entries), NoCheck{});
    }

    ChannelMatrix ChannelMatrix::scaled(double factor) const
    {
        return unchecked(h_ * factor);
    }

    ChannelMatrix ChannelMatrix::rows_permuted(const std::vector<std::size_t> &order) const
    {
        if (order.size() != rx_count())
            throw std::invalid_argument("rows_permuted: order has wrong length");
        Matrix out(h_.rows(), h_.cols());
        for (std::size_t i = 0; i < order.size(); ++i)
            out.row(Eigen::Index(i)) = h_.row(Eigen::Index(order.at(i)));
        return unchecked(std::move(out));
    }

    ChannelMatrix los_channel(const LinkGeometry &geometry)
    {
        geometry.validate();
        const auto &tx = geometry.tx;
        const auto &rx = geometry.rx;
        const double r2 = geometry.distance * geometry.distance;
        const double k = 2.0 * std::numbers::pi / geometry.wavelength;

        Eigen::MatrixXcd h(Eigen::Index(rx.size()), Eigen::Index(tx.size()));
        for (std::size_t m = 0; m < rx.size(); ++m)
            for (std::size_t n = 0; n < tx.size(); ++n)
            {
                const double du = tx[n].u - rx[m].u;
                const double dv = tx[n].v - rx[m].v;
                const double r = std::sqrt(r2 + du * du + dv * dv);
                h(Eigen::Index(m), Eigen::Index(n)) = std::polar(1.0, -k * r);
            }
        return ChannelMatrix(std::move(h));
    }
} // namespace losq
