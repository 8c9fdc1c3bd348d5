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

#include "sixdma/scenario.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace sixdma;
using Catch::Approx;

namespace {

UserDistribution two_region(double mean_inner, double mean_outer)
{
    UserDistribution dist;
    dist.inner_radius = 20.0;
    dist.outer_radius = 40.0;
    dist.density_inner = mean_inner / dist.inner_area();
    dist.density_outer = mean_outer / dist.outer_area();
    return dist;
}

NetworkLayout small_layout()
{
    NetworkLayout layout;
    layout.ap_positions = {{-15.0, 0.0}, {15.0, 0.0}};
    layout.surfaces_per_ap = 2;
    layout.antennas_h = 2;
    layout.antennas_v = 1;
    return layout;
}

RotationVector spread_rotations(const NetworkLayout& layout)
{
    RotationVector rv(layout.ap_count(), layout.surfaces_per_ap);
    for (int m = 0; m < rv.ap_count; ++m)
        for (int b = 0; b < rv.surfaces_per_ap; ++b)
            rv.at(m, b) = 0.4 + b * (two_pi / rv.surfaces_per_ap) + 0.1 * m;
    return rv;
}

} // namespace

TEST_CASE("zero outer density keeps every user in the inner disk", "[scenario]")
{
    const UserDistribution dist = two_region(8.0, 0.0);
    Rng rng(61);
    for (int draw = 0; draw < 200; ++draw)
        for (const Vec2& u : sample_users(dist, rng))
            CHECK(std::hypot(u.x, u.y) <= dist.inner_radius);
}

TEST_CASE("empirical mean user count tracks the distribution mean", "[scenario]")
{
    const UserDistribution dist = two_region(10.0, 20.0);
    REQUIRE(dist.mean_count() == Approx(30.0));

    Rng rng(62);
    const int draws = 100000;
    double total = 0.0;
    for (int i = 0; i < draws; ++i)
        total += static_cast<double>(sample_users(dist, rng).size());
    const double mean = total / draws;
    CHECK(std::abs(mean - dist.mean_count()) < 0.01 * dist.mean_count());
}

TEST_CASE("annulus radii follow the uniform-area law", "[scenario]")
{
    // One-sample Kolmogorov-Smirnov against F(rho) = (rho^2 - ri^2)/(ro^2 - ri^2)
    // at the 1% level; critical value 1.628/sqrt(n).
    const double ri = 20.0, ro = 40.0;
    const int n = 10000;
    Rng rng(63);
    std::vector<double> radii(n);
    for (int i = 0; i < n; ++i)
    {
        const Vec2 p = rng.point_in_annulus({0.0, 0.0}, ri, ro);
        radii[i] = std::hypot(p.x, p.y);
    }
    std::sort(radii.begin(), radii.end());

    double ks = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double f = (radii[i] * radii[i] - ri * ri) / (ro * ro - ri * ri);
        ks = std::max(ks, std::abs((i + 1.0) / n - f));
        ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
    }
    CHECK(ks < 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("fixed-count mode pins the draw size", "[scenario]")
{
    UserDistribution dist = two_region(10.0, 20.5);
    dist.fixed_count = true;
    Rng rng(64);
    for (int draw = 0; draw < 50; ++draw)
        CHECK(sample_users(dist, rng).size() == std::lround(dist.mean_count()));
}

TEST_CASE("distribution validation rejects bad radii and densities", "[scenario]")
{
    UserDistribution dist = two_region(5.0, 5.0);
    dist.inner_radius = 0.0;
    CHECK_THROWS_AS(dist.validate(), std::invalid_argument);

    dist = two_region(5.0, 5.0);
    dist.outer_radius = dist.inner_radius;
    CHECK_THROWS_AS(dist.validate(), std::invalid_argument);

    dist = two_region(5.0, 5.0);
    dist.density_outer = -1.0;
    CHECK_THROWS_AS(dist.validate(), std::invalid_argument);
}

TEST_CASE("realization sets are deterministic in the seed", "[scenario]")
{
    const UserDistribution dist = two_region(4.0, 6.0);
    const RealizationSet a = build_realizations(dist, 10, 777);
    const RealizationSet b = build_realizations(dist, 10, 777);
    REQUIRE(a.count() == 10);
    REQUIRE(b.count() == 10);
    for (int v = 0; v < 10; ++v)
    {
        REQUIRE(a.realizations[v].size() == b.realizations[v].size());
        for (std::size_t i = 0; i < a.realizations[v].size(); ++i)
        {
            CHECK(a.realizations[v][i].x == b.realizations[v][i].x);
            CHECK(a.realizations[v][i].y == b.realizations[v][i].y);
        }
    }

    const RealizationSet c = build_realizations(dist, 10, 778);
    bool identical = true;
    for (int v = 0; v < 10 && identical; ++v)
    {
        if (a.realizations[v].size() != c.realizations[v].size())
            identical = false;
        else
            for (std::size_t i = 0; i < a.realizations[v].size(); ++i)
                if (a.realizations[v][i].x != c.realizations[v][i].x)
                    identical = false;
    }
    CHECK_FALSE(identical);
}

TEST_CASE("each realization depends only on its own index", "[scenario]")
{
    const UserDistribution dist = two_region(4.0, 6.0);
    const RealizationSet small = build_realizations(dist, 3, 900);
    const RealizationSet large = build_realizations(dist, 8, 900);
    for (int v = 0; v < 3; ++v)
    {
        REQUIRE(small.realizations[v].size() == large.realizations[v].size());
        for (std::size_t i = 0; i < small.realizations[v].size(); ++i)
        {
            CHECK(small.realizations[v][i].x == large.realizations[v][i].x);
            CHECK(small.realizations[v][i].y == large.realizations[v][i].y);
        }
    }
}

TEST_CASE("realization count must be positive", "[scenario]")
{
    const UserDistribution dist = two_region(4.0, 6.0);
    CHECK_THROWS_AS(build_realizations(dist, 0, 1), std::invalid_argument);
    CHECK(build_realizations(dist, 1, 1).count() == 1);
}

TEST_CASE("single-realization objective equals that realization's sum-rate", "[scenario]")
{
    const NetworkLayout layout = small_layout();
    const RotationVector phi = spread_rotations(layout);
    const PatternKind kind = HalfSpaceIsotropic{};
    const RadioParams radio;

    const UserDistribution dist = two_region(3.0, 4.0);
    const RealizationSet reals = build_realizations(dist, 1, 321);
    REQUIRE_FALSE(reals.realizations[0].empty());

    const double obj = objective(phi, reals, layout, kind, radio, CombineMode::Cmmse);
    const ChannelSet channels =
        collective_channels(reals.realizations[0], phi, layout, kind, radio);
    CHECK(obj == sum_rate_realization(channels, CombineMode::Cmmse, radio));
}

TEST_CASE("objective is bit-identical for any worker count", "[scenario]")
{
    const NetworkLayout layout = small_layout();
    const RotationVector phi = spread_rotations(layout);
    const PatternKind kind = HalfSpaceIsotropic{};
    const RadioParams radio;

    const UserDistribution dist = two_region(3.0, 4.0);
    const RealizationSet reals = build_realizations(dist, 9, 5150);

    const double r1 = objective(phi, reals, layout, kind, radio, CombineMode::Cmmse, 1);
    const double r3 = objective(phi, reals, layout, kind, radio, CombineMode::Cmmse, 3);
    const double r8 = objective(phi, reals, layout, kind, radio, CombineMode::Cmmse, 8);
    CHECK(r1 == r3);
    CHECK(r1 == r8);
}

TEST_CASE("cmmse objective dominates lmmse pointwise", "[scenario]")
{
    const NetworkLayout layout = small_layout();
    const PatternKind kind = HalfSpaceIsotropic{};
    const RadioParams radio;
    const UserDistribution dist = two_region(3.0, 4.0);
    const RealizationSet reals = build_realizations(dist, 5, 246);

    Rng rng(65);
    for (int trial = 0; trial < 5; ++trial)
    {
        const RotationVector phi = sample_feasible_rotations(
            layout.ap_count(), layout.surfaces_per_ap, layout.min_separation, rng);
        const double joint = objective(phi, reals, layout, kind, radio, CombineMode::Cmmse);
        const double local = objective(phi, reals, layout, kind, radio, CombineMode::Lmmse);
        CHECK(joint >= local * (1.0 - 1e-12));
    }
}

TEST_CASE("objective rejects infeasible rotation vectors", "[scenario]")
{
    const NetworkLayout layout = small_layout();
    RotationVector phi = spread_rotations(layout);
    phi.at(0, 0) = phi.at(0, 1) + 0.5; // break the ascending order

    const UserDistribution dist = two_region(3.0, 4.0);
    const RealizationSet reals = build_realizations(dist, 2, 99);
    CHECK_THROWS_AS(
        objective(phi, reals, layout, HalfSpaceIsotropic{}, RadioParams{}, CombineMode::Cmmse),
        std::invalid_argument);
}

TEST_CASE("empty realizations contribute zero to the average", "[scenario]")
{
    const NetworkLayout layout = small_layout();
    const RotationVector phi = spread_rotations(layout);
    const PatternKind kind = HalfSpaceIsotropic{};
    const RadioParams radio;

    const UserDistribution dist = two_region(3.0, 4.0);
    RealizationSet reals = build_realizations(dist, 1, 321);
    REQUIRE_FALSE(reals.realizations[0].empty());
    const double single = objective(phi, reals, layout, kind, radio, CombineMode::Cmmse);

    reals.realizations.push_back({}); // one empty drop
    const double diluted = objective(phi, reals, layout, kind, radio, CombineMode::Cmmse);
    CHECK(diluted == Approx(single / 2.0).epsilon(1e-15));
}
