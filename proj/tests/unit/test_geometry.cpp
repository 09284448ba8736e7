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

#include <catch2/catch_amalgamated.hpp>

#include "losq/geometry.hpp"
#include "losq/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace losq;
using Catch::Matchers::WithinAbs;

TEST_CASE("ula_positions - spacing and endpoints")
{
    const auto two = ula_positions(0.5, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].u == -0.25);
    CHECK(two[1].u == 0.25);
    CHECK(two[0].v == 0.0);
    CHECK(two.kind() == ArrayKind::ULA);

    const auto six = ula_positions(0.5, 6);
    for (std::size_t i = 1; i < six.size(); ++i)
        CHECK_THAT(six[i].u - six[i - 1].u, WithinAbs(0.1, 1e-15));

    const auto ten = ula_positions(1.0 / std::sqrt(2.0), 10);
    CHECK_THAT(ten[1].u - ten[0].u, WithinAbs(0.07856742013183861, 1e-15));
    CHECK_THAT(min_pairwise_distance(ten.positions()), WithinAbs(1.0 / std::sqrt(2.0) / 9.0, 1e-15));

    const auto one = ula_positions(0.5, 1);
    CHECK(one[0] == Point2{0.0, 0.0});
}

TEST_CASE("ula_positions - errors")
{
    CHECK_THROWS_AS(ula_positions(0.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(ula_positions(-1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(ula_positions(0.5, 0), std::invalid_argument);
}

TEST_CASE("ula min distance equals D/(M-1) for a range of sizes")
{
    for (std::size_t m = 2; m <= 20; ++m)
        CHECK_THAT(min_pairwise_distance(ula_positions(0.5, m).positions()), WithinAbs(0.5 / double(m - 1), 1e-15));
}

TEST_CASE("ura_positions")
{
    const auto four = ura_positions(0.5, 4);
    REQUIRE(four.size() == 4);
    for (const auto &p : four.positions())
    {
        CHECK(std::abs(p.u) == 0.25);
        CHECK(std::abs(p.v) == 0.25);
    }

    const auto nine = ura_positions(0.5, 9);
    CHECK_THAT(min_pairwise_distance(nine.positions()), WithinAbs(0.25, 1e-15));

    CHECK_THROWS_AS(ura_positions(0.5, 5), std::invalid_argument);
    CHECK_THROWS_AS(ura_positions(0.5, 0), std::invalid_argument);
}

TEST_CASE("AntennaArray invariants")
{
    CHECK_THROWS_AS(AntennaArray({}, 1.0, ArrayKind::CUSTOM), std::invalid_argument);
    CHECK_THROWS_AS(AntennaArray({{0, 0}, {0, 0}}, 1.0, ArrayKind::CUSTOM), std::invalid_argument);
    CHECK_THROWS_AS(AntennaArray({{0.6, 0}}, 1.0, ArrayKind::CUSTOM), std::invalid_argument);
    CHECK_THROWS_AS(AntennaArray({{0, 0.1}}, 1.0, ArrayKind::ULA), std::invalid_argument);
    CHECK_THROWS_AS(AntennaArray({{-0.5, 0}, {0, 0}, {0.4, 0}}, 1.0, ArrayKind::ULA), std::invalid_argument);
    CHECK_NOTHROW(AntennaArray({{0.5 + 1e-13, 0}}, 1.0, ArrayKind::CUSTOM));
}

TEST_CASE("PackingCatalog - builtin catalog")
{
    const auto &cat = PackingCatalog::builtin();
    for (std::size_t m = 1; m <= 20; ++m)
    {
        INFO("M = " << m);
        REQUIRE(cat.contains(m));
        const auto &pts = cat.at(m);
        CHECK(pts.size() == m);
        for (const auto &p : pts)
        {
            CHECK(p.u >= 0.0);
            CHECK(p.u <= 1.0);
            CHECK(p.v >= 0.0);
            CHECK(p.v <= 1.0);
        }
        if (m > 1)
        {
            REQUIRE(cat.declared_min_distance(m).has_value());
            CHECK_THAT(min_pairwise_distance(pts), WithinAbs(*cat.declared_min_distance(m), 1e-9));
        }
    }

    // closed-form optima
    CHECK_THAT(*cat.declared_min_distance(2), WithinAbs(std::sqrt(2.0), 1e-12));
    CHECK_THAT(*cat.declared_min_distance(3), WithinAbs(std::sqrt(6.0) - std::sqrt(2.0), 1e-12));
    CHECK_THAT(*cat.declared_min_distance(5), WithinAbs(std::sqrt(2.0) / 2.0, 1e-12));
    CHECK_THAT(*cat.declared_min_distance(7), WithinAbs(4.0 - 2.0 * std::sqrt(3.0), 1e-12));
    CHECK_THAT(*cat.declared_min_distance(8), WithinAbs((std::sqrt(6.0) - std::sqrt(2.0)) / 2.0, 1e-12));

    // plotted arrangements are carried verbatim
    const auto &four = cat.at(4);
    CHECK(four == std::vector<Point2>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(cat.at(10)[0] == Point2{0.421123159552682, 0});
    CHECK(cat.at(10)[9] == Point2{0.623010052377129, 1});
}

TEST_CASE("PackingCatalog - parser validation")
{
    {
        std::istringstream in("# comment\n1 0.5 0.5\n2 0 0 1 1\n# dmin 2 1.4142135623730951\n");
        const auto cat = PackingCatalog::parse(in);
        CHECK(cat.counts() == std::vector<std::size_t>{1, 2});
    }
    {
        std::istringstream in("2 0 0 1 1.5\n");
        CHECK_THROWS(PackingCatalog::parse(in));
    }
    {
        std::istringstream in("3 0 0 1 1\n");
        CHECK_THROWS(PackingCatalog::parse(in));
    }
    {
        std::istringstream in("2 0 0 1 1\n# dmin 2 1.3\n");
        CHECK_THROWS(PackingCatalog::parse(in));
    }
    {
        std::istringstream in("2 0 0 0 0\n");
        CHECK_THROWS(PackingCatalog::parse(in));
    }
    {
        std::istringstream in("1 0.5 0.5\n1 0.4 0.4\n");
        CHECK_THROWS(PackingCatalog::parse(in));
    }
}

TEST_CASE("packed_positions")
{
    const auto &cat = PackingCatalog::builtin();
    const auto four = packed_positions(0.5, 4, cat);
    const auto ura = ura_positions(0.5, 4);
    for (const auto &p : four.positions())
        CHECK(std::find(ura.positions().begin(), ura.positions().end(), p) != ura.positions().end());

    const auto ten = packed_positions(0.5, 10, cat);
    CHECK_THAT(ten[0].u, WithinAbs((0.421123159552682 - 0.5) * 0.5, 1e-15));
    CHECK_THAT(ten[0].v, WithinAbs(-0.25, 1e-15));

    PackingCatalog single;
    single.insert(1, {{0.5, 0.5}});
    CHECK(packed_positions(0.5, 1, single)[0] == Point2{0, 0});

    CHECK_THROWS_AS(packed_positions(0.5, 7, single), std::out_of_range);

    for (std::size_t m = 2; m <= 20; ++m)
        CHECK_THAT(min_pairwise_distance(packed_positions(0.37, m, cat).positions()) / 0.37,
                   WithinAbs(min_pairwise_distance(cat.at(m)), 1e-9));
}

TEST_CASE("los_channel - entries")
{
    const auto single = AntennaArray({{0, 0}}, 0.1, ArrayKind::CUSTOM);
    const auto h = los_channel({single, single, 100.0, 0.005});
    CHECK_THAT(h(0, 0).real(), WithinAbs(1.0, 1e-9));
    CHECK_THAT(h(0, 0).imag(), WithinAbs(0.0, 1e-9));

    const auto ula = ula_positions(0.5, 2);
    const auto h2 = los_channel({ula, ula, 100.0, 0.005});
    const Eigen::MatrixXcd gram = h2.matrix().adjoint() * h2.matrix();
    CHECK_THAT(gram(0, 0).real(), WithinAbs(2.0, 1e-12));
    CHECK_THAT(gram(1, 1).real(), WithinAbs(2.0, 1e-12));
    CHECK(std::abs(gram(0, 1)) < 2e-2);

    const auto big = los_channel({ura_positions(0.5, 4), packed_positions(0.5, 10, PackingCatalog::builtin()), 100.0, 0.005});
    for (std::size_t m = 0; m < big.rx_count(); ++m)
        for (std::size_t n = 0; n < big.tx_count(); ++n)
            CHECK_THAT(std::abs(big(m, n)), WithinAbs(1.0, 1e-12));
}

TEST_CASE("los_channel - phase follows exp(-j 2 pi r / lambda)")
{
    const AntennaArray tx({{0.1, -0.2}}, 0.5, ArrayKind::CUSTOM);
    const AntennaArray rx({{-0.15, 0.05}}, 0.5, ArrayKind::CUSTOM);
    const auto h = los_channel({tx, rx, 100.0, 0.005});
    const double r = std::sqrt(100.0 * 100.0 + 0.25 * 0.25 + 0.25 * 0.25);
    const double cycles = r / 0.005;
    const double phase = -2.0 * std::numbers::pi * (cycles - std::floor(cycles));
    CHECK_THAT(std::arg(h(0, 0) * std::polar(1.0, -phase)), WithinAbs(0.0, 1e-9));
}

TEST_CASE("los_channel - invalid geometry")
{
    const auto ula = ula_positions(0.5, 2);
    CHECK_THROWS_AS(los_channel({ula, ula, 0.0, 0.005}), std::invalid_argument);
    CHECK_THROWS_AS(los_channel({ula, ula, 100.0, -1.0}), std::invalid_argument);
}

TEST_CASE("los_channel - common translation leaves H unchanged")
{
    const auto tx = ura_positions(0.5, 4);
    const auto rx = packed_positions(0.5, 7, PackingCatalog::builtin());
    const auto h = los_channel({tx, rx, 100.0, 0.005});
    for (const auto &[du, dv] : {std::pair{0.125, -0.0625}, std::pair{-0.25, 0.5}, std::pair{1e-3, 3e-3}})
    {
        const auto moved = los_channel({tx.translated(du, dv), rx.translated(du, dv), 100.0, 0.005});
        CHECK((moved.matrix() - h.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("los_channel - swapping receive antennas swaps rows")
{
    const auto tx = ula_positions(0.5, 2);
    const auto rx = ula_positions(0.5, 5);
    auto swapped = rx.positions();
    std::swap(swapped[1], swapped[3]);
    const auto h = los_channel({tx, rx, 100.0, 0.005});
    const auto hs = los_channel({tx, AntennaArray(swapped, 0.5, ArrayKind::CUSTOM), 100.0, 0.005});
    CHECK(hs.matrix().row(1) == h.matrix().row(3));
    CHECK(hs.matrix().row(3) == h.matrix().row(1));
    for (Eigen::Index m : {0, 2, 4})
        CHECK(hs.matrix().row(m) == h.matrix().row(m));
}

TEST_CASE("ChannelMatrix rejects non-unit entries")
{
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = {0.5, 0.0};
    CHECK_THROWS_AS(ChannelMatrix(m), std::invalid_argument);
    CHECK_NOTHROW(ChannelMatrix::unchecked(m));
}

TEST_CASE("Gaussian capacity of the S = 1 ULA link matches 2 log2(1 + SNR)")
{
    // d^2 = lambda R / N makes the 2 x 2 link (near) orthogonal
    const auto ula = ula_positions(0.5, 2);
    const auto h = los_channel({ula, ula, 100.0, 0.005});
    const auto noise = NoiseModel::from_snr_db(-5.0);
    const double c = gaussian_capacity(h, noise, 2).bpcu;
    CHECK_THAT(c, WithinAbs(0.792818322, 1e-9));
    CHECK_THAT(c, WithinAbs(2.0 * std::log2(1.0 + std::pow(10.0, -0.5)), 1e-8));
}
