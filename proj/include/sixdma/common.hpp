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

#include <cmath>
#include <string>

namespace sixdma {

inline constexpr const char* version_string = "0.1.0";

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }

/// Power ratio in dB to linear scale.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Absolute power in dBm to watts.
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

/// Reduce an angle to [0, 2*pi).
inline double wrap_two_pi(double angle)
{
    double w = angle - two_pi * std::floor(angle / two_pi);
    if (w >= two_pi) // floor rounding can leave w == 2*pi
        w -= two_pi;
    if (w < 0.0)
        w = 0.0;
    return w;
}

/// Reduce an angle to (-pi, pi].
inline double wrap_pi(double angle)
{
    double w = wrap_two_pi(angle);
    return w > pi ? w - two_pi : w;
}

/// Ground-plane point in the global coordinate system (meters).
struct Vec2
{
    double x = 0.0;
    double y = 0.0;
};

} // namespace sixdma
