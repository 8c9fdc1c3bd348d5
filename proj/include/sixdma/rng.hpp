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

#include "sixdma/common.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>

namespace sixdma {

// Reproducibility contract: all randomness flows through Rng, which wraps
// std::mt19937_64 (bit-exact across platforms per the C++ standard) and
// hand-rolled distribution transforms. The standard-library distribution
// classes are implementation-defined and are deliberately not used.

/// splitmix64 finalizer; used to derive well-separated substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for substream `index` of master stream `seed`.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index)
{
    return splitmix64(splitmix64(seed) ^ splitmix64(index * 0xD1B54A32D192ED03ULL + 1ULL));
}

class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform()
    {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Poisson sample by Knuth's product method, chunked so the
    /// exp(-mean) threshold never underflows (chunk mean <= 200).
    long poisson(double mean)
    {
        if (mean < 0.0)
            throw std::invalid_argument("Poisson mean cannot be negative.");
        long total = 0;
        while (mean > 200.0)
        {
            total += poisson_knuth(200.0);
            mean -= 200.0;
        }
        return total + poisson_knuth(mean);
    }

    /// Uniform point in the disk of radius `radius` around `center`.
    Vec2 point_in_disk(Vec2 center, double radius)
    {
        double rho = radius * std::sqrt(uniform());
        double ang = uniform(0.0, two_pi);
        return {center.x + rho * std::cos(ang), center.y + rho * std::sin(ang)};
    }

    /// Uniform point in the annulus r_inner <= rho <= r_outer around `center`.
    /// Radius by inverse CDF of the area law, F(rho) = (rho^2 - ri^2) / (ro^2 - ri^2).
    Vec2 point_in_annulus(Vec2 center, double r_inner, double r_outer)
    {
        double u = uniform();
        double rho = std::sqrt(r_inner * r_inner + u * (r_outer * r_outer - r_inner * r_inner));
        double ang = uniform(0.0, two_pi);
        return {center.x + rho * std::cos(ang), center.y + rho * std::sin(ang)};
    }

  private:
    long poisson_knuth(double mean)
    {
        if (mean <= 0.0)
            return 0;
        const double threshold = std::exp(-mean);
        long k = 0;
        double p = 1.0;
        do
        {
            ++k;
            p *= uniform();
        } while (p > threshold);
        return k - 1;
    }

    std::mt19937_64 gen_;
};

} // namespace sixdma
