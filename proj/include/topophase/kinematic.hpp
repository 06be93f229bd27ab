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

// Geometric phase along ψ(t) = U_signal(ξ(t)) ψ0 from the kinematic
// split: geometric = total − dynamical, with
//   total     = arg⟨ψ(0)|ψ(1)⟩
//   dynamical = Σ_j arg⟨ψ_j|ψ_{j+1}⟩   (Bargmann chain over t_j = j/N)
// The chain sum has an O(1/N²) discretization error, so the reported
// dynamical phase is the Richardson combination (4·S_N − S_{N/2}) / 3.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <json.hpp>

#include "topophase/angles.hpp"
#include "topophase/error.hpp"
#include "topophase/phase_schedule.hpp"
#include "topophase/qudit_state.hpp"

namespace topophase {

struct KinematicPhases {
    double total = 0.0;
    double dynamical = 0.0;
    double geometric = 0.0;  // (−π, π]
    int steps = 0;
};

inline constexpr int kMinKinematicSteps = 100;
inline constexpr double kDegenerateOverlap = 1e-10;

namespace detail {

template <ScheduleLike S>
std::vector<BipartiteQuditState> state_path(const BipartiteQuditState& s0, const S& sched, int steps) {
    std::vector<BipartiteQuditState> path;
    path.reserve(static_cast<std::size_t>(steps) + 1);
    for (int j = 0; j <= steps; ++j) {
        const double t = static_cast<double>(j) / steps;
        path.push_back(apply_signal_phases(s0, DiagonalPhaseOp(sched(t))));
    }
    return path;
}

inline double chain_phase(const std::vector<BipartiteQuditState>& path, int stride) {
    double sum = 0.0;
    for (std::size_t j = 0; j + stride < path.size(); j += stride) {
        const Complex ov = inner_product(path[j], path[j + stride]);
        if (std::abs(ov) < kDegenerateOverlap) {
            throw Error(ErrorKind::DegenerateOverlap, "consecutive states are orthogonal; refine the step count");
        }
        sum += std::arg(ov);
    }
    return sum;
}

}  // namespace detail

template <ScheduleLike S>
KinematicPhases kinematic_phase(const BipartiteQuditState& s0, const S& sched, int steps) {
    if (steps < kMinKinematicSteps || steps % 2 != 0) {
        throw Error(ErrorKind::InvalidArgument, "kinematic_phase needs an even step count >= 100");
    }
    if (sched.dim() != s0.dim()) throw Error(ErrorKind::DimensionMismatch, "schedule and state dimensions differ");

    const auto path = detail::state_path(s0, sched, steps);
    const Complex end_overlap = inner_product(path.front(), path.back());
    if (std::abs(end_overlap) < kDegenerateOverlap) {
        throw Error(ErrorKind::DegenerateOverlap, "end state is orthogonal to the start; total phase undefined");
    }

    KinematicPhases out;
    out.steps = steps;
    out.total = std::arg(end_overlap);
    const double fine = detail::chain_phase(path, 1);
    const double coarse = detail::chain_phase(path, 2);
    out.dynamical = (4.0 * fine - coarse) / 3.0;
    out.geometric = wrap_symmetric(out.total - out.dynamical);
    return out;
}

/// 2πn/d folded into [0, 2π).
inline double predict_fractional(int d, int n) {
    if (d < 2) throw Error(ErrorKind::InvalidDimension, "qudit dimension must be at least 2");
    return wrap_positive(kTwoPi * static_cast<double>(n) / d);
}

inline nlohmann::json to_json(const KinematicPhases& k) {
    return {{"degrees",
             {{"total_deg", rad_to_deg(k.total)},
              {"dynamical_deg", rad_to_deg(k.dynamical)},
              {"geometric_deg", rad_to_deg(k.geometric)}}},
            {"radians", {{"total", k.total}, {"dynamical", k.dynamical}, {"geometric", k.geometric}}},
            {"steps", k.steps}};
}

}  // namespace topophase
