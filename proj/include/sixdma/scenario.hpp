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

#pragma once

#include "sixdma/parallel.hpp"
#include "sixdma/receiver.hpp"
#include "sixdma/rng.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sixdma {

// ------------------------------------------------------------------------
// User distribution
// ------------------------------------------------------------------------

/// Two concentric circular regions with independent user densities: a disk
/// of radius `inner_radius` and the annulus out to `outer_radius`.
struct UserDistribution
{
    double inner_radius = 20.0;   // R_A, m
    double outer_radius = 40.0;   // R_B, m
    double density_inner = 0.0;   // mu_A, users / m^2
    double density_outer = 0.0;   // mu_B, users / m^2
    Vec2 center;
    bool fixed_count = false;     // true: total count pinned to round(mean_count())

    double inner_area() const { return pi * inner_radius * inner_radius; }
    double outer_area() const
    {
        return pi * (outer_radius * outer_radius - inner_radius * inner_radius);
    }
    double mean_inner() const { return density_inner * inner_area(); }
    double mean_outer() const { return density_outer * outer_area(); }
    double mean_count() const { return mean_inner() + mean_outer(); }

    void validate() const
    {
        if (!(inner_radius > 0.0) || !(outer_radius > inner_radius))
            throw std::invalid_argument("UserDistribution: need 0 < inner_radius < outer_radius.");
        if (density_inner < 0.0 || density_outer < 0.0)
            throw std::invalid_argument("UserDistribution: densities cannot be negative.");
    }
};

/// Draw one user drop. Counts are Poisson per region (or, with fixed_count,
/// round(mean) users assigned to regions by their mean shares); positions
/// are uniform by area within each region.
inline std::vector<Vec2> sample_users(const UserDistribution& dist, Rng& rng)
{
    dist.validate();
    long n_inner = 0, n_outer = 0;
    if (dist.fixed_count)
    {
        const long total = std::lround(dist.mean_count());
        const double p_inner = dist.mean_count() > 0.0 ? dist.mean_inner() / dist.mean_count() : 0.0;
        for (long i = 0; i < total; ++i)
            (rng.uniform() < p_inner ? n_inner : n_outer) += 1;
    }
    else
    {
        n_inner = rng.poisson(dist.mean_inner());
        n_outer = rng.poisson(dist.mean_outer());
    }

    std::vector<Vec2> users;
    users.reserve(static_cast<std::size_t>(n_inner + n_outer));
    for (long i = 0; i < n_inner; ++i)
        users.push_back(rng.point_in_disk(dist.center, dist.inner_radius));
    for (long i = 0; i < n_outer; ++i)
        users.push_back(rng.point_in_annulus(dist.center, dist.inner_radius, dist.outer_radius));
    return users;
}

// ------------------------------------------------------------------------
// Frozen Monte-Carlo realizations
// ------------------------------------------------------------------------

/// An immutable set of user drops. The same frozen set backs every
/// objective evaluation of one optimization run, which makes the sample
/// average a deterministic function of the rotation vector.
struct RealizationSet
{
    std::vector<std::vector<Vec2>> realizations;
    std::uint64_t seed = 0;

    int count() const { return static_cast<int>(realizations.size()); }
};

/// Deterministic given (dist, count, seed); realization v draws from the
/// substream derive_stream(seed, v), so the set does not depend on the
/// order in which realizations are generated or evaluated.
inline RealizationSet build_realizations(const UserDistribution& dist, int count,
                                         std::uint64_t seed)
{
    if (count < 1)
        throw std::invalid_argument("build_realizations: need at least one realization.");
    RealizationSet set;
    set.seed = seed;
    set.realizations.resize(count);
    for (int v = 0; v < count; ++v)
    {
        Rng rng(derive_stream(seed, static_cast<std::uint64_t>(v)));
        set.realizations[v] = sample_users(dist, rng);
    }
    return set;
}

// ------------------------------------------------------------------------
// Sample-average objective
// ------------------------------------------------------------------------

/// Sum-rate of every realization at rotation vector `phi`. Realizations are
/// evaluated in parallel; results land in fixed index order, so downstream
/// reductions are bit-identical for any worker count. Throws
/// std::invalid_argument for infeasible rotation vectors.
inline std::vector<double> realization_rates(const RotationVector& phi,
                                             const RealizationSet& reals,
                                             const NetworkLayout& layout, const PatternKind& kind,
                                             const RadioParams& radio, CombineMode mode,
                                             int workers = 1)
{
    const auto valid = validate_rotations(phi, layout.min_separation);
    if (!valid.ok)
        throw std::invalid_argument("realization_rates: infeasible rotation vector: " +
                                    valid.violation->describe());

    const std::size_t n = reals.realizations.size();
    std::vector<double> rates(n, 0.0);
    parallel_for(n, workers, [&](std::size_t v) {
        const ChannelSet channels =
            collective_channels(reals.realizations[v], phi, layout, kind, radio);
        rates[v] = sum_rate_realization(channels, mode, radio);
    });
    return rates;
}

/// Monte-Carlo average sum-rate over the frozen realization set: the
/// deterministic sample-average objective of the rotation optimization.
inline double objective(const RotationVector& phi, const RealizationSet& reals,
                        const NetworkLayout& layout, const PatternKind& kind,
                        const RadioParams& radio, CombineMode mode, int workers = 1)
{
    const std::vector<double> rates =
        realization_rates(phi, reals, layout, kind, radio, mode, workers);
    if (rates.empty())
        return 0.0;
    double acc = 0.0;
    for (const double r : rates)
        acc += r;
    return acc / static_cast<double>(rates.size());
}

} // namespace sixdma
