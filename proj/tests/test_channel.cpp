// SPDX-License-Identifier: Apache-2.0
//
// sixdma-cf: uplink simulator and rotation optimizer for cell-free massive
// MIMO networks with rotatable antenna surfaces
// Copyright (C) 2026 the sixdma-cf authors
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

#include "sixdma/channel.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

using namespace sixdma;
using Catch::Approx;

namespace {

NetworkLayout one_ap_layout(int surfaces, int n_h, int n_v, double height = 10.0)
{
    NetworkLayout layout;
    layout.ap_positions = {{0.0, 0.0}};
    layout.ap_height = height;
    layout.surfaces_per_ap = surfaces;
    layout.antennas_h = n_h;
    layout.antennas_v = n_v;
    return layout;
}

RotationVector evenly_spread(int aps, int surfaces)
{
    RotationVector rv(aps, surfaces);
    for (int m = 0; m < aps; ++m)
        for (int b = 0; b < surfaces; ++b)
            rv.at(m, b) = b * two_pi / surfaces + 0.1;
    return rv;
}

} // namespace

TEST_CASE("single-element response is the bare phase factor", "[channel]")
{
    const ArrivalAngles angles{1.1, 2.2, 25.0};
    const double rotation = 0.4, r = 1.0, lambda = 0.125;
    const Cvec f = array_response(rotation, angles, Isotropic{}, 1, 1, r, lambda);

    REQUIRE(f.size() == 1);
    const double rho =
        two_pi * r / lambda * std::cos(rotation - angles.azimuth) * std::sin(angles.elevation);
    CHECK(std::abs(f(0)) == Approx(1.0).epsilon(1e-15));
    CHECK(std::arg(f(0)) == Approx(wrap_pi(rho)).margin(1e-9));
}

TEST_CASE("broadside response has flat horizontal phases", "[channel]")
{
    const ArrivalAngles angles{0.9, deg_to_rad(120.0), 40.0};
    const Cvec f = array_response(angles.azimuth, angles, Isotropic{}, 4, 1, 1.0, 0.125);

    REQUIRE(f.size() == 4);
    const double rho = two_pi * 1.0 / 0.125 * std::sin(angles.elevation);
    for (int n = 0; n < 4; ++n)
    {
        CHECK(std::abs(f(n)) == Approx(1.0).epsilon(1e-15));
        CHECK(std::arg(f(n)) == Approx(wrap_pi(rho)).margin(1e-9));
    }
}

TEST_CASE("every response entry has magnitude sqrt(gain)", "[channel]")
{
    Rng rng(31);
    const PatternKind patterns[] = {make_directional_pattern(PatternParams{}),
                                    PatternKind{HalfSpaceIsotropic{}}, PatternKind{Isotropic{}}};
    for (const auto& pattern : patterns)
        for (int trial = 0; trial < 200; ++trial)
        {
            const double rotation = rng.uniform(0.0, two_pi);
            const ArrivalAngles angles{rng.uniform(0.0, two_pi),
                                       rng.uniform(pi / 2.0 + 0.01, pi),
                                       rng.uniform(5.0, 100.0)};
            const Cvec f = array_response(rotation, angles, pattern, 3, 2, 1.0, 0.125);
            const double expected =
                std::sqrt(effective_gain(pattern, rotation, angles.azimuth, angles.elevation));
            REQUIRE(f.size() == 6);
            for (int n = 0; n < f.size(); ++n)
                CHECK(std::abs(f(n)) == Approx(expected).margin(1e-13));
        }
}

TEST_CASE("kronecker order is horizontal-outer", "[channel]")
{
    const ArrivalAngles angles{0.7, deg_to_rad(115.0), 30.0};
    const int n_h = 3, n_v = 2;
    const Cvec f = array_response(0.2, angles, Isotropic{}, n_h, n_v, 1.0, 0.125);

    const double sin_off = std::sin(0.2 - angles.azimuth);
    const double sin_el = std::sin(angles.elevation);
    const double cos_el = std::cos(angles.elevation);
    const double rho = two_pi * 1.0 / 0.125 * std::cos(0.2 - angles.azimuth) * sin_el;
    for (int ih = 0; ih < n_h; ++ih)
        for (int iv = 0; iv < n_v; ++iv)
        {
            const double ph = pi * ((n_h + 1) / 2.0 - (ih + 1)) * sin_off * sin_el;
            const double pv = pi * ((n_v + 1) / 2.0 - (iv + 1)) * cos_el;
            const std::complex<double> expected = std::polar(1.0, rho + ph + pv);
            const std::complex<double> actual = f(ih * n_v + iv);
            CHECK(std::abs(actual - expected) < 1e-12);
        }
}

TEST_CASE("ap channel norm for the isotropic pattern", "[channel]")
{
    // AP height 0.6 m and horizontal offset 0.8 m put the user at the 1 m
    // reference distance, so the large-scale gain is exactly nu_0.
    auto layout = one_ap_layout(4, 2, 1, 0.6);
    RadioParams radio;
    const auto rv = evenly_spread(1, 4);

    const Cvec h = ap_channel(0, {0.8, 0.0}, rv, layout, Isotropic{}, radio);
    REQUIRE(h.size() == 8);
    CHECK(h.squaredNorm() == Approx(radio.ref_gain * 8.0).epsilon(1e-12));
}

TEST_CASE("back-lobed half-space surfaces produce a zero channel", "[channel]")
{
    auto layout = one_ap_layout(2, 2, 1);
    RadioParams radio;
    const auto rv = RotationVector::from_flat({pi - 0.2, pi + 0.2}, 1, 2);

    // User due east (azimuth 0); both surfaces face west.
    const Cvec h = ap_channel(0, {50.0, 0.0}, rv, layout, HalfSpaceIsotropic{}, radio);
    CHECK(h.norm() == 0.0);
}

TEST_CASE("channel norm identity over random configurations", "[channel]")
{
    Rng rng(32);
    RadioParams radio;
    const PatternKind patterns[] = {make_directional_pattern(PatternParams{}),
                                    PatternKind{HalfSpaceIsotropic{}}, PatternKind{Isotropic{}}};
    for (int trial = 0; trial < 1000; ++trial)
    {
        auto layout = one_ap_layout(3, 2, 2, rng.uniform(5.0, 15.0));
        const auto& pattern = patterns[trial % 3];
        const auto rv = sample_feasible_rotations(1, 3, layout.min_separation, rng);
        const Vec2 user{rng.uniform(-60.0, 60.0), rng.uniform(-60.0, 60.0)};

        const auto angles = arrival_angles(0, user, layout);
        double gain_sum = 0.0;
        for (int b = 0; b < 3; ++b)
            gain_sum += effective_gain(pattern, rv.at(0, b), angles.azimuth, angles.elevation);
        const double expected =
            radio.ref_gain / (angles.distance * angles.distance) * 4.0 * gain_sum;

        const Cvec h = ap_channel(0, user, rv, layout, pattern, radio);
        CHECK(h.squaredNorm() == Approx(expected).margin(1e-12 * std::max(expected, 1e-30)));
    }
}

TEST_CASE("collective channels stack per-AP blocks in order", "[channel]")
{
    NetworkLayout layout;
    layout.ap_positions = {{20.0, 0.0}, {0.0, 20.0}};
    layout.surfaces_per_ap = 3;
    layout.antennas_h = 2;
    layout.antennas_v = 1;
    RadioParams radio;
    const auto rv = evenly_spread(2, 3);
    const std::vector<Vec2> users = {{5.0, 5.0}, {-10.0, 3.0}};

    const ChannelSet set =
        collective_channels(users, rv, layout, HalfSpaceIsotropic{}, radio);
    REQUIRE(set.users.size() == 2);
    REQUIRE(set.ap_count == 2);
    REQUIRE(set.per_ap_length == 6);

    for (int k = 0; k < 2; ++k)
        for (int m = 0; m < 2; ++m)
        {
            const Cvec expected = ap_channel(static_cast<std::size_t>(m), users[k], rv, layout,
                                             HalfSpaceIsotropic{}, radio);
            CHECK((set.ap_block(k, m) - expected).norm() == 0.0);
        }
}

TEST_CASE("collective channels handle zero users", "[channel]")
{
    auto layout = one_ap_layout(2, 2, 1);
    const ChannelSet set =
        collective_channels({}, evenly_spread(1, 2), layout, Isotropic{}, RadioParams{});
    CHECK(set.users.empty());
}

TEST_CASE("global rotation of the whole deployment preserves channel geometry", "[channel]")
{
    Rng rng(33);
    RadioParams radio;
    NetworkLayout layout;
    layout.ap_positions = {{20.0, 0.0}, {-5.0, 12.0}};
    layout.surfaces_per_ap = 3;
    layout.antennas_h = 2;
    layout.antennas_v = 1;

    const PatternKind pattern = make_directional_pattern(PatternParams{});

    for (int trial = 0; trial < 50; ++trial)
    {
        const auto rv = sample_feasible_rotations(2, 3, layout.min_separation, rng);
        std::vector<Vec2> users;
        for (int k = 0; k < 4; ++k)
            users.push_back({rng.uniform(-40.0, 40.0), rng.uniform(-40.0, 40.0)});

        const double c = rng.uniform(0.0, two_pi);
        const double cos_c = std::cos(c), sin_c = std::sin(c);
        auto rotate = [&](Vec2 p) {
            return Vec2{cos_c * p.x - sin_c * p.y, sin_c * p.x + cos_c * p.y};
        };

        NetworkLayout layout2 = layout;
        for (auto& p : layout2.ap_positions)
            p = rotate(p);
        std::vector<Vec2> users2;
        for (const auto& u : users)
            users2.push_back(rotate(u));
        RotationVector rv2 = rv;
        for (int m = 0; m < 2; ++m)
        {
            std::vector<double> a(3);
            for (int b = 0; b < 3; ++b)
                a[b] = wrap_two_pi(rv.at(m, b) + c);
            std::sort(a.begin(), a.end());
            for (int b = 0; b < 3; ++b)
                rv2.at(m, b) = a[b];
        }

        const ChannelSet set1 = collective_channels(users, rv, layout, pattern, radio);
        const ChannelSet set2 = collective_channels(users2, rv2, layout2, pattern, radio);

        for (std::size_t k = 0; k < users.size(); ++k)
        {
            CHECK(set2.users[k].norm() ==
                  Approx(set1.users[k].norm()).epsilon(1e-9).margin(1e-15));
            for (std::size_t i = k + 1; i < users.size(); ++i)
            {
                const double ip1 = std::abs(set1.users[k].dot(set1.users[i]));
                const double ip2 = std::abs(set2.users[k].dot(set2.users[i]));
                CHECK(ip2 == Approx(ip1).epsilon(1e-9).margin(1e-12));
            }
        }
    }
}
