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
#include "sixdma/rng.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sixdma {

// ------------------------------------------------------------------------
// Network geometry
// ------------------------------------------------------------------------

/// Static deployment parameters: AP reference positions on the ground plane,
/// the circular surface track at each AP, and the surface/antenna counts.
struct NetworkLayout
{
    std::vector<Vec2> ap_positions;
    double ap_height = 10.0;     // m
    double track_radius = 1.0;   // m; 0 collapses all surfaces onto the AP reference point
    int surfaces_per_ap = 6;     // B
    int antennas_h = 2;          // N_h
    int antennas_v = 1;          // N_v
    double min_separation = 0.0625; // delta, radians

    int ap_count() const { return static_cast<int>(ap_positions.size()); }
    int antennas_per_surface() const { return antennas_h * antennas_v; }
    int antennas_per_ap() const { return antennas_per_surface() * surfaces_per_ap; }
    int total_antennas() const { return antennas_per_ap() * ap_count(); }

    /// Throws std::invalid_argument on the first violated invariant.
    void validate() const
    {
        if (ap_positions.empty())
            throw std::invalid_argument("NetworkLayout: at least one AP position is required.");
        if (!(ap_height > 0.0))
            throw std::invalid_argument("NetworkLayout: ap_height must be positive.");
        if (track_radius < 0.0)
            throw std::invalid_argument("NetworkLayout: track_radius cannot be negative.");
        if (surfaces_per_ap < 1)
            throw std::invalid_argument("NetworkLayout: surfaces_per_ap must be >= 1.");
        if (antennas_h < 1 || antennas_v < 1)
            throw std::invalid_argument("NetworkLayout: antenna counts must be >= 1.");
        if (!(min_separation > 0.0))
            throw std::invalid_argument("NetworkLayout: min_separation must be positive.");
        if (surfaces_per_ap * min_separation >= two_pi)
            throw std::invalid_argument(
                "NetworkLayout: surfaces_per_ap * min_separation must stay below 2*pi, "
                "otherwise no feasible rotation vector exists.");
    }
};

/// Per-AP azimuth rotation angles of all surfaces, ascending within each AP.
/// This is the decision variable of the rotation optimization.
struct RotationVector
{
    int ap_count = 0;
    int surfaces_per_ap = 0;
    std::vector<double> angles; // row-major [ap][surface], radians

    RotationVector() = default;
    RotationVector(int aps, int surfaces)
        : ap_count(aps), surfaces_per_ap(surfaces),
          angles(static_cast<std::size_t>(aps) * surfaces, 0.0)
    {
    }

    double& at(int ap, int surface) { return angles[idx(ap, surface)]; }
    double at(int ap, int surface) const { return angles[idx(ap, surface)]; }

    /// Flattened view in AP-major order, matching the collective angle vector.
    const std::vector<double>& flat() const { return angles; }

    static RotationVector from_flat(const std::vector<double>& values, int aps, int surfaces)
    {
        if (values.size() != static_cast<std::size_t>(aps) * surfaces)
            throw std::invalid_argument("RotationVector: flat size does not match (aps, surfaces).");
        RotationVector rv(aps, surfaces);
        rv.angles = values;
        return rv;
    }

  private:
    std::size_t idx(int ap, int surface) const
    {
        return static_cast<std::size_t>(ap) * surfaces_per_ap + surface;
    }
};

/// Azimuth/elevation/distance of a user as seen from an AP reference point.
/// Elevation lives in (pi/2, pi]; pi means the user is directly below the AP.
struct ArrivalAngles
{
    double azimuth = 0.0;   // [0, 2*pi)
    double elevation = 0.0; // (pi/2, pi]
    double distance = 0.0;  // m
};

/// Position of a surface center on the track, in the AP's local frame.
inline std::array<double, 3> surface_center(double rotation, double track_radius)
{
    return {track_radius * std::cos(rotation), track_radius * std::sin(rotation), 0.0};
}

/// Arrival geometry for `user` at AP `ap_index`. Users sit on the ground
/// plane; the AP reference point is at height `layout.ap_height`. A user
/// exactly below the AP gets azimuth 0 and elevation pi by convention.
inline ArrivalAngles arrival_angles(std::size_t ap_index, Vec2 user, const NetworkLayout& layout)
{
    if (ap_index >= layout.ap_positions.size())
        throw std::out_of_range("arrival_angles: ap_index out of range.");
    const Vec2 ap = layout.ap_positions[ap_index];
    const double dx = user.x - ap.x;
    const double dy = user.y - ap.y;
    const double h = layout.ap_height;
    const double horizontal = std::hypot(dx, dy);

    ArrivalAngles out;
    out.distance = std::hypot(horizontal, h);
    if (horizontal == 0.0)
    {
        out.azimuth = 0.0;
        out.elevation = pi;
        return out;
    }
    out.azimuth = wrap_two_pi(std::atan2(dy, dx));
    out.elevation = std::atan(h / horizontal) + pi / 2.0;
    return out;
}

// ------------------------------------------------------------------------
// Rotation-vector feasibility
// ------------------------------------------------------------------------

struct ConstraintViolation
{
    enum class Kind
    {
        OutOfRange,   // angle outside [0, 2*pi)
        Ordering,     // angles not strictly ascending
        AdjacentGap,  // gap between surfaces b and b+1 below min separation
        WrapGap       // first-to-last wrap-around gap below min separation
    };

    Kind kind = Kind::AdjacentGap;
    int ap = 0;
    int surface = 0;  // lower index of the violating pair
    double gap = 0.0; // offending gap (radians), where applicable

    std::string describe() const
    {
        std::ostringstream os;
        os << "AP " << ap << ", surface " << surface << ": ";
        switch (kind)
        {
        case Kind::OutOfRange:
            os << "angle outside [0, 2*pi)";
            break;
        case Kind::Ordering:
            os << "angles not strictly ascending";
            break;
        case Kind::AdjacentGap:
            os << "adjacent gap " << gap << " rad below minimum separation";
            break;
        case Kind::WrapGap:
            os << "wrap-around gap " << gap << " rad below minimum separation";
            break;
        }
        return os.str();
    }
};

struct ValidationResult
{
    bool ok = true;
    std::optional<ConstraintViolation> violation;

    explicit operator bool() const { return ok; }
};

/// Rounding slack for the separation checks. Region endpoints are built as
/// midpoint +- delta/2, and the subtraction of two such endpoints can land
/// one ulp short of delta; a strict comparison would then reject a vector
/// the construction guarantees feasible. A nanoradian is far above any
/// accumulated rounding and far below any real constraint violation.
inline constexpr double gap_slack = 1.0e-9;

/// Check ascending order, adjacent gaps and the wrap-around gap per AP.
/// Reports the first violated constraint; never throws.
inline ValidationResult validate_rotations(const RotationVector& candidate, double min_separation)
{
    const int aps = candidate.ap_count;
    const int surfaces = candidate.surfaces_per_ap;
    for (int m = 0; m < aps; ++m)
    {
        for (int b = 0; b < surfaces; ++b)
        {
            const double a = candidate.at(m, b);
            if (!(a >= 0.0) || !(a < two_pi))
                return {false, ConstraintViolation{ConstraintViolation::Kind::OutOfRange, m, b, a}};
        }
        for (int b = 0; b + 1 < surfaces; ++b)
        {
            const double gap = candidate.at(m, b + 1) - candidate.at(m, b);
            if (gap <= 0.0)
                return {false, ConstraintViolation{ConstraintViolation::Kind::Ordering, m, b, gap}};
            if (gap < min_separation - gap_slack)
                return {false, ConstraintViolation{ConstraintViolation::Kind::AdjacentGap, m, b, gap}};
        }
        if (surfaces >= 2)
        {
            const double wrap = candidate.at(m, 0) + two_pi - candidate.at(m, surfaces - 1);
            if (wrap < min_separation - gap_slack)
                return {false,
                        ConstraintViolation{ConstraintViolation::Kind::WrapGap, m, surfaces - 1, wrap}};
        }
    }
    return {true, std::nullopt};
}

// ------------------------------------------------------------------------
// Feasible-region transform
// ------------------------------------------------------------------------

struct Interval
{
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return x >= lo && x <= hi; }
    double width() const { return hi - lo; }
};

/// Per-surface continuous search intervals around an anchor rotation vector.
/// Intervals of one AP are listed in surface order; they may extend outside
/// [0, 2*pi) at the wrap boundary, in which case sampled angles are reduced
/// mod 2*pi and re-sorted before use.
struct FeasibleRegions
{
    int ap_count = 0;
    int surfaces_per_ap = 0;
    std::vector<Interval> regions; // row-major [ap][surface]

    Interval& at(int ap, int surface) { return regions[idx(ap, surface)]; }
    const Interval& at(int ap, int surface) const { return regions[idx(ap, surface)]; }

  private:
    std::size_t idx(int ap, int surface) const
    {
        return static_cast<std::size_t>(ap) * surfaces_per_ap + surface;
    }
};

/// Split the constrained search space into per-surface intervals anchored at
/// a feasible rotation vector: each interval ends halfway (minus half the
/// separation) between the anchor angle and its neighbors.
///
/// Boundary handling for the first/last surface mirrors the anchor across 0
/// and 2*pi (phantom neighbors -phi_1 and 4*pi - phi_B). That mirror
/// convention collapses when phi_1 < delta/2 or phi_B > 2*pi - delta/2; in
/// that case, and always for B = 1, the wrap-around gap between the last and
/// first surface is split symmetrically instead (phantom neighbors
/// phi_B - 2*pi and phi_1 + 2*pi), which keeps every interval non-empty and
/// the anchor inside its own interval.
inline FeasibleRegions feasible_regions(const RotationVector& anchor, double min_separation)
{
    const auto valid = validate_rotations(anchor, min_separation);
    if (!valid.ok)
        throw std::invalid_argument("feasible_regions: infeasible anchor: " +
                                    valid.violation->describe());

    const int aps = anchor.ap_count;
    const int surfaces = anchor.surfaces_per_ap;
    FeasibleRegions out;
    out.ap_count = aps;
    out.surfaces_per_ap = surfaces;
    out.regions.resize(static_cast<std::size_t>(aps) * surfaces);

    const double delta = min_separation;
    for (int m = 0; m < aps; ++m)
    {
        const double first = anchor.at(m, 0);
        const double last = anchor.at(m, surfaces - 1);
        const bool mirror_ok =
            surfaces >= 2 && first >= delta / 2.0 && last <= two_pi - delta / 2.0;

        double below, above; // phantom neighbors for b = 0 and b = B-1
        if (mirror_ok)
        {
            below = -first;
            above = 2.0 * two_pi - last;
        }
        else
        {
            below = last - two_pi;
            above = first + two_pi;
        }

        for (int b = 0; b < surfaces; ++b)
        {
            const double prev = (b == 0) ? below : anchor.at(m, b - 1);
            const double next = (b == surfaces - 1) ? above : anchor.at(m, b + 1);
            const double cur = anchor.at(m, b);
            out.at(m, b) = {(prev + cur + delta) / 2.0, (next + cur - delta) / 2.0};
        }
    }
    return out;
}

// ------------------------------------------------------------------------
// Feasible sampling
// ------------------------------------------------------------------------

/// Draw a feasible rotation vector by rejection: per AP, sort B uniform
/// angles and redraw until the separation constraints hold.
inline RotationVector sample_feasible_rotations(int aps, int surfaces, double min_separation,
                                                Rng& rng)
{
    if (surfaces * min_separation >= two_pi)
        throw std::invalid_argument("sample_feasible_rotations: no feasible rotation exists.");
    RotationVector rv(aps, surfaces);
    std::vector<double> draw(surfaces);
    for (int m = 0; m < aps; ++m)
    {
        while (true)
        {
            for (int b = 0; b < surfaces; ++b)
                draw[b] = rng.uniform(0.0, two_pi);
            std::sort(draw.begin(), draw.end());

            bool ok = true;
            for (int b = 0; b + 1 < surfaces && ok; ++b)
                ok = draw[b + 1] - draw[b] >= min_separation;
            if (ok && surfaces >= 2)
                ok = draw[0] + two_pi - draw[surfaces - 1] >= min_separation;
            if (ok)
            {
                for (int b = 0; b < surfaces; ++b)
                    rv.at(m, b) = draw[b];
                break;
            }
        }
    }
    return rv;
}

} // namespace sixdma
