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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace losq
{
    // Transverse coordinates in meters, in a plane orthogonal to the link axis.
    struct Point2
    {
        double u = 0.0;
        double v = 0.0;

        friend bool operator==(const Point2 &, const Point2 &) = default;
    };

    enum class ArrayKind
    {
        ULA,
        URA,
        PACKED,
        CUSTOM
    };

    std::string to_string(ArrayKind kind);
    ArrayKind parse_array_kind(const std::string &name);

    double min_pairwise_distance(const std::vector<Point2> &points);

    /*!
    Antenna array in the transverse plane.

    - `positions` are non-empty and pairwise distinct.
    - Every coordinate lies inside the square (or segment) of side `aperture`
      centered at the origin, within 1e-12 m.
    - ULA: all v are zero and consecutive spacing is constant.
    */
    class AntennaArray
    {
    public:
        AntennaArray(std::vector<Point2> positions, double aperture, ArrayKind kind);

        const std::vector<Point2> &positions() const { return positions_; }
        std::size_t size() const { return positions_.size(); }
        double aperture() const { return aperture_; }
        ArrayKind kind() const { return kind_; }
        const Point2 &operator[](std::size_t i) const { return positions_[i]; }

        // Same arrangement shifted by (du, dv); kind becomes CUSTOM and the aperture grows to
        // keep the bounding square around the origin.
        AntennaArray translated(double du, double dv) const;

    private:
        std::vector<Point2> positions_;
        double aperture_;
        ArrayKind kind_;
    };

    // `count` antennas on the u axis spanning [-D/2, D/2]; a single antenna sits at the center.
    AntennaArray ula_positions(double aperture, std::size_t count);

    // sqrt(count) x sqrt(count) grid spanning the D x D square; count must be a perfect square.
    AntennaArray ura_positions(double aperture, std::size_t count);

    /*!
    Best-known point packings in the unit square, keyed by point count.

    Text format, one record per line: `M x1 y1 ... xM yM`. Lines starting
    with '#' are comments; a comment of the form `# dmin M value` declares
    the expected minimum pairwise distance for M, which the loader checks
    to 1e-9.
    */
    class PackingCatalog
    {
    public:
        static PackingCatalog parse(std::istream &in);
        static PackingCatalog load(const std::filesystem::path &path);
        // Catalog shipped with the library (data/packings.txt).
        static const PackingCatalog &builtin();

        void insert(std::size_t count, std::vector<Point2> unit_points);
        bool contains(std::size_t count) const { return entries_.count(count) != 0; }
        const std::vector<Point2> &at(std::size_t count) const;
        std::optional<double> declared_min_distance(std::size_t count) const;
        std::vector<std::size_t> counts() const;

    private:
        std::map<std::size_t, std::vector<Point2>> entries_;
        std::map<std::size_t, double> declared_;
    };

    // Catalog points scaled by `aperture` and recentered on the origin, catalog order preserved.
    AntennaArray packed_positions(double aperture, std::size_t count, const PackingCatalog &catalog);

    // Parallel, broadside-facing arrays with centers on the common boresight axis.
    struct LinkGeometry
    {
        AntennaArray tx;
        AntennaArray rx;
        double distance = 100.0;    // R in meters
        double wavelength = 0.005;  // lambda in meters

        void validate() const;
    };

    /*!
    M x N line-of-sight channel. Entry (m, n) is exp(-j 2 pi r_mn / lambda)
    where r_mn is the Euclidean distance between transmit antenna n and
    receive antenna m; path amplitudes are all 1.
    */
    class ChannelMatrix
    {
    public:
        using Matrix = Eigen::MatrixXcd;

        explicit ChannelMatrix(Matrix entries);

        std::size_t rx_count() const { return static_cast<std::size_t>(h_.rows()); }
        std::size_t tx_count() const { return static_cast<std::size_t>(h_.cols()); }
        const Matrix &matrix() const { return h_; }
        std::complex<double> operator()(std::size_t m, std::size_t n) const { return h_(Eigen::Index(m), Eigen::Index(n)); }

        // Unit-modulus check is skipped so tests can scale channels.
        static ChannelMatrix unchecked(Matrix entries);

        ChannelMatrix scaled(double factor) const;
        ChannelMatrix rows_permuted(const std::vector<std::size_t> &order) const;

    private:
        struct NoCheck {};
        ChannelMatrix(Matrix entries, NoCheck) : h_(std::move(entries)) {}
        Matrix h_;
    };

    ChannelMatrix los_channel(const LinkGeometry &geometry);
} // namespace losq
