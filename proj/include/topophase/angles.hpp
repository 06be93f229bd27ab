// Copyright 2026 The topophase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <numbers>

namespace topophase {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Representative in [0, 2π).
inline double wrap_positive(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    // fmod can land exactly on 2π after the correction above
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

/// Representative in (−π, π].
inline double wrap_symmetric(double angle) {
    double r = wrap_positive(angle);
    if (r > kPi) r -= kTwoPi;
    return r;
}

/// Smallest absolute difference between two angles.
inline double angular_distance(double a, double b) {
    return std::abs(wrap_symmetric(a - b));
}

}  // namespace topophase
