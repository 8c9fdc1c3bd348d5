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

#include <stdexcept>
#include <string>

namespace sixdma {

/// The five compared system configurations. All keep the same total antenna
/// count M*N*B as the cell-free 6DMA baseline they derive from.
enum class SchemeKind
{
    CellFree6DMADirectional,
    CellFree6DMAHalfSpace,
    Centralized6DMA,
    CellFreeSectorizedUPA,
    CellFreeIsotropicULA
};

inline std::string to_string(SchemeKind kind)
{
    switch (kind)
    {
    case SchemeKind::CellFree6DMADirectional: return "cellfree-6dma-directional";
    case SchemeKind::CellFree6DMAHalfSpace: return "cellfree-6dma-halfspace";
    case SchemeKind::Centralized6DMA: return "centralized-6dma";
    case SchemeKind::CellFreeSectorizedUPA: return "cellfree-sectorized-upa";
    case SchemeKind::CellFreeIsotropicULA: return "cellfree-isotropic-ula";
    }
    throw std::logic_error("to_string: unknown SchemeKind.");
}

inline SchemeKind parse_scheme(const std::string& name)
{
    if (name == "cellfree-6dma-directional") return SchemeKind::CellFree6DMADirectional;
    if (name == "cellfree-6dma-halfspace") return SchemeKind::CellFree6DMAHalfSpace;
    if (name == "centralized-6dma") return SchemeKind::Centralized6DMA;
    if (name == "cellfree-sectorized-upa") return SchemeKind::CellFreeSectorizedUPA;
    if (name == "cellfree-isotropic-ula") return SchemeKind::CellFreeIsotropicULA;
    throw std::invalid_argument(
        "parse_scheme: unknown scheme '" + name +
        "' (expected cellfree-6dma-directional, cellfree-6dma-halfspace, centralized-6dma, "
        "cellfree-sectorized-upa, or cellfree-isotropic-ula).");
}

/// A ready-to-simulate system: the (possibly reshaped) layout, the antenna
/// pattern, and either an optimizable rotation space or a fixed rotation.
struct SchemeSetup
{
    SchemeKind kind = SchemeKind::CellFree6DMADirectional;
    NetworkLayout layout;
    PatternKind pattern;
    bool optimize_rotations = false;
    RotationVector fixed_rotations; // meaningful only when !optimize_rotations
};

/// Derive a benchmark configuration from the cell-free 6DMA base layout.
/// Every scheme preserves the total antenna count:
///  - half-space: base layout, hemisphere pattern, rotations optimizable;
///  - centralized: one AP at the origin, B surfaces widened to M*N_h x N_v;
///  - sectorized: three fixed directional arrays of (N*B)/3 x 1 per AP, at
///    boresights 0, 2pi/3, 4pi/3 (standard tri-sector split);
///  - ULA: one fixed N*B x 1 isotropic array per AP, track radius 0, rotation
///    pi/2 so the elements line up along the AP's local x-axis.
inline SchemeSetup build_scheme(SchemeKind kind, const NetworkLayout& base,
                                const PatternParams& pattern_params, QuadratureGrid grid = {})
{
    base.validate();
    const int base_total = base.total_antennas();
    const int per_ap = base.antennas_per_surface() * base.surfaces_per_ap; // N*B

    SchemeSetup setup;
    setup.kind = kind;
    setup.layout = base;

    switch (kind)
    {
    case SchemeKind::CellFree6DMADirectional:
        setup.pattern = make_directional_pattern(pattern_params, grid);
        setup.optimize_rotations = true;
        break;

    case SchemeKind::CellFree6DMAHalfSpace:
        setup.pattern = HalfSpaceIsotropic{};
        setup.optimize_rotations = true;
        break;

    case SchemeKind::Centralized6DMA:
        setup.layout.ap_positions = {Vec2{0.0, 0.0}};
        setup.layout.antennas_h = base.ap_count() * base.antennas_h;
        setup.pattern = make_directional_pattern(pattern_params, grid);
        setup.optimize_rotations = true;
        break;

    case SchemeKind::CellFreeSectorizedUPA:
    {
        if (per_ap % 3 != 0)
            throw std::invalid_argument(
                "build_scheme: sectorized scheme needs N*B divisible by 3, got " +
                std::to_string(per_ap) + ".");
        setup.layout.surfaces_per_ap = 3;
        setup.layout.antennas_h = per_ap / 3;
        setup.layout.antennas_v = 1;
        setup.pattern = make_directional_pattern(pattern_params, grid);
        setup.optimize_rotations = false;
        setup.fixed_rotations = RotationVector(base.ap_count(), 3);
        for (int m = 0; m < base.ap_count(); ++m)
            for (int b = 0; b < 3; ++b)
                setup.fixed_rotations.at(m, b) = b * two_pi / 3.0;
        break;
    }

    case SchemeKind::CellFreeIsotropicULA:
        setup.layout.surfaces_per_ap = 1;
        setup.layout.antennas_h = per_ap;
        setup.layout.antennas_v = 1;
        setup.layout.track_radius = 0.0;
        setup.pattern = Isotropic{};
        setup.optimize_rotations = false;
        setup.fixed_rotations = RotationVector(base.ap_count(), 1);
        for (int m = 0; m < base.ap_count(); ++m)
            setup.fixed_rotations.at(m, 0) = pi / 2.0;
        break;
    }

    if (setup.layout.total_antennas() != base_total)
        throw std::logic_error("build_scheme: antenna-count parity violated.");
    setup.layout.validate();
    if (!setup.optimize_rotations)
    {
        const auto valid = validate_rotations(setup.fixed_rotations, setup.layout.min_separation);
        if (!valid.ok)
            throw std::logic_error("build_scheme: fixed rotations infeasible: " +
                                   valid.violation->describe());
    }
    return setup;
}

} // namespace sixdma
