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

#include "sixdma/antenna.hpp"
#include "sixdma/geometry.hpp"

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace sixdma {

using Cvec = Eigen::VectorXcd;
using Cmat = Eigen::MatrixXcd;

/// Link-budget constants shared by all users and APs.
struct RadioParams
{
    double wavelength = 0.125;  // m
    double tx_power = 1e-3;     // p_0, W
    double noise_power = 1e-11; // sigma^2, W
    double ref_gain = 1e-4;     // nu_0, linear power gain at 1 m

    void validate() const
    {
        if (!(wavelength > 0.0) || !(tx_power > 0.0) || !(noise_power > 0.0) ||
            !(ref_gain > 0.0))
            throw std::invalid_argument("RadioParams: all parameters must be positive.");
    }
};

// ------------------------------------------------------------------------
// Array response and channel synthesis
// ------------------------------------------------------------------------

/// Steering vector of one surface: sqrt(g) e^{j rho} (a_h kron a_v), where
/// a_h/a_v are the half-wavelength planar steering factors, and rho is the
/// phase advance of the surface center on the track relative to the AP
/// reference point. Horizontal index outer, vertical index inner.
inline Cvec array_response(double rotation, const ArrivalAngles& angles, const PatternKind& kind,
                           int n_h, int n_v, double track_radius, double wavelength)
{
    if (n_h < 1 || n_v < 1)
        throw std::invalid_argument("array_response: antenna counts must be >= 1.");

    const double g = effective_gain(kind, rotation, angles.azimuth, angles.elevation);
    Cvec out(static_cast<Eigen::Index>(n_h) * n_v);
    if (g == 0.0)
    {
        out.setZero();
        return out;
    }

    const double sin_el = std::sin(angles.elevation);
    const double cos_el = std::cos(angles.elevation);
    const double sin_off = std::sin(rotation - angles.azimuth);
    const double center_phase =
        two_pi * track_radius / wavelength * std::cos(rotation - angles.azimuth) * sin_el;
    const double amp = std::sqrt(g);

    const std::complex<double> scale = amp * std::exp(std::complex<double>(0.0, center_phase));
    for (int ih = 0; ih < n_h; ++ih)
    {
        const double ph = pi * ((n_h + 1) / 2.0 - (ih + 1)) * sin_off * sin_el;
        for (int iv = 0; iv < n_v; ++iv)
        {
            const double pv = pi * ((n_v + 1) / 2.0 - (iv + 1)) * cos_el;
            out[static_cast<Eigen::Index>(ih) * n_v + iv] =
                scale * std::exp(std::complex<double>(0.0, ph + pv));
        }
    }
    return out;
}

/// Channel from one user to one AP: per-surface array responses stacked in
/// surface order, scaled by the free-space amplitude sqrt(nu_0)/d and the
/// propagation phase e^{-j 2 pi d / lambda}.
inline Cvec ap_channel(std::size_t ap_index, Vec2 user, const RotationVector& rotations,
                       const NetworkLayout& layout, const PatternKind& kind,
                       const RadioParams& radio)
{
    const ArrivalAngles angles = arrival_angles(ap_index, user, layout);
    const double amp = std::sqrt(radio.ref_gain) / angles.distance;
    const std::complex<double> scale =
        amp * std::exp(std::complex<double>(0.0, -two_pi * angles.distance / radio.wavelength));

    const int n = layout.antennas_per_surface();
    Cvec out(static_cast<Eigen::Index>(n) * layout.surfaces_per_ap);
    for (int b = 0; b < layout.surfaces_per_ap; ++b)
    {
        out.segment(static_cast<Eigen::Index>(b) * n, n) =
            scale * array_response(rotations.at(static_cast<int>(ap_index), b), angles, kind,
                                   layout.antennas_h, layout.antennas_v, layout.track_radius,
                                   radio.wavelength);
    }
    return out;
}

/// Collective channel vectors of one user drop: per user, the per-AP
/// channels stacked in AP-index order.
struct ChannelSet
{
    int ap_count = 0;
    int per_ap_length = 0;     // N*B
    std::vector<Cvec> users;   // each of length N*B*M

    int user_count() const { return static_cast<int>(users.size()); }
    int collective_length() const { return ap_count * per_ap_length; }

    /// View of user k's channel block at AP m.
    Eigen::VectorBlock<const Cvec> ap_block(int user, int ap) const
    {
        return users[user].segment(static_cast<Eigen::Index>(ap) * per_ap_length, per_ap_length);
    }
};

inline ChannelSet collective_channels(const std::vector<Vec2>& user_positions,
                                      const RotationVector& rotations, const NetworkLayout& layout,
                                      const PatternKind& kind, const RadioParams& radio)
{
    ChannelSet set;
    set.ap_count = layout.ap_count();
    set.per_ap_length = layout.antennas_per_ap();
    set.users.reserve(user_positions.size());
    for (const Vec2& u : user_positions)
    {
        Cvec h(set.collective_length());
        for (int m = 0; m < set.ap_count; ++m)
            h.segment(static_cast<Eigen::Index>(m) * set.per_ap_length, set.per_ap_length) =
                ap_channel(static_cast<std::size_t>(m), u, rotations, layout, kind, radio);
        set.users.push_back(std::move(h));
    }
    return set;
}

} // namespace sixdma
