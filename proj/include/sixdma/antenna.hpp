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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>

namespace sixdma {

// ------------------------------------------------------------------------
// Antenna gain patterns
// ------------------------------------------------------------------------

/// 3GPP-style directional pattern parameters. Angles in radians, gains in
/// dB/dBi as usual for this model; `normalization` is the linear-scale
/// spherical average of the unnormalized pattern and must be computed (via
/// normalization_factor) before the pattern is used for channel synthesis.
struct PatternParams
{
    double max_gain_dbi = 14.0;               // A_m
    double beamwidth_az = deg_to_rad(65.0);   // phi_3dB
    double beamwidth_el = deg_to_rad(65.0);   // theta_3dB
    double sidelobe_h = 20.0;                 // SL_h, dB
    double sidelobe_v = 20.0;                 // SL_v, dB
    double downtilt = deg_to_rad(100.0);      // theta_tilt
    double normalization = 0.0;               // eta, linear; 0 = not yet computed

    void validate() const
    {
        if (!(beamwidth_az > 0.0) || !(beamwidth_el > 0.0))
            throw std::invalid_argument("PatternParams: beamwidths must be positive.");
        if (!(sidelobe_h > 0.0) || !(sidelobe_v > 0.0))
            throw std::invalid_argument("PatternParams: sidelobe levels must be positive.");
    }
};

/// Directional gain in dBi before normalization: the maximum gain minus the
/// combined horizontal/vertical attenuation, each clamped at its sidelobe
/// level, with the combination clamped at the horizontal sidelobe level.
/// The azimuth offset is wrapped to (-pi, pi] before squaring.
inline double unnormalized_gain_dbi(double rotation, double azimuth, double elevation,
                                    const PatternParams& p)
{
    const double dphi = wrap_pi(azimuth - rotation);
    const double ah = -std::min(12.0 * (dphi / p.beamwidth_az) * (dphi / p.beamwidth_az),
                                p.sidelobe_h);
    const double dv = (elevation - p.downtilt) / p.beamwidth_el;
    const double av = -std::min(12.0 * dv * dv, p.sidelobe_v);
    return p.max_gain_dbi - std::min(-(ah + av), p.sidelobe_h);
}

struct QuadratureGrid
{
    int n_azimuth = 720;
    int n_elevation = 360;
};

namespace detail {

inline double pattern_spherical_average(const PatternParams& p, const QuadratureGrid& grid)
{
    // Midpoint rule over [0, 2*pi) x [0, pi]; (1/4pi) int int g sin(theta).
    const double daz = two_pi / grid.n_azimuth;
    const double del = pi / grid.n_elevation;
    double acc = 0.0;
    for (int ie = 0; ie < grid.n_elevation; ++ie)
    {
        const double el = (ie + 0.5) * del;
        const double sin_el = std::sin(el);
        double row = 0.0;
        for (int ia = 0; ia < grid.n_azimuth; ++ia)
        {
            const double az = (ia + 0.5) * daz;
            row += db_to_linear(unnormalized_gain_dbi(0.0, az, el, p));
        }
        acc += row * sin_el;
    }
    return acc * daz * del / (4.0 * pi);
}

} // namespace detail

/// Spherical average eta of the linear-scale unnormalized pattern, by
/// midpoint quadrature with a convergence check at doubled resolution.
/// Throws std::runtime_error if the quadrature has not converged to 1e-3
/// relative, and std::invalid_argument for grids below 360 x 180.
inline double normalization_factor(const PatternParams& params, QuadratureGrid grid = {})
{
    params.validate();
    if (grid.n_azimuth < 360 || grid.n_elevation < 180)
        throw std::invalid_argument("normalization_factor: grid must be at least 360 x 180.");
    const double coarse = detail::pattern_spherical_average(params, grid);
    const double fine =
        detail::pattern_spherical_average(params, {2 * grid.n_azimuth, 2 * grid.n_elevation});
    if (std::abs(fine - coarse) >= 1e-3 * std::abs(fine))
        throw std::runtime_error("normalization_factor: quadrature did not converge.");
    return coarse;
}

// ------------------------------------------------------------------------
// Effective gain
// ------------------------------------------------------------------------

/// Directional pattern with precomputed normalization.
struct Directional3GPP
{
    PatternParams params;
};

/// Uniform radiation into the hemisphere the surface faces; zero behind.
struct HalfSpaceIsotropic
{
};

struct Isotropic
{
};

using PatternKind = std::variant<Directional3GPP, HalfSpaceIsotropic, Isotropic>;

/// Build a directional pattern, computing eta eagerly.
inline PatternKind make_directional_pattern(PatternParams params, QuadratureGrid grid = {})
{
    params.normalization = normalization_factor(params, grid);
    return Directional3GPP{params};
}

/// Linear-scale effective antenna gain of a surface rotated to `rotation`
/// for a signal arriving from (azimuth, elevation). The dBi-to-linear
/// conversion happens here and nowhere else.
inline double effective_gain(const PatternKind& kind, double rotation, double azimuth,
                             double elevation)
{
    if (const auto* dir = std::get_if<Directional3GPP>(&kind))
    {
        const PatternParams& p = dir->params;
        if (!(p.normalization > 0.0))
            throw std::logic_error("effective_gain: directional pattern lacks a normalization "
                                   "factor; construct it via make_directional_pattern.");
        return db_to_linear(unnormalized_gain_dbi(rotation, azimuth, elevation, p)) /
               p.normalization;
    }
    if (std::holds_alternative<HalfSpaceIsotropic>(kind))
        return std::cos(wrap_pi(azimuth - rotation)) > 0.0 ? 2.0 : 0.0;
    return 1.0;
}

} // namespace sixdma
