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

// SLM phase schedules t ↦ (ξ_1 … ξ_d), t ∈ [0, 1], radians.

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <fstream>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "topophase/angles.hpp"
#include "topophase/error.hpp"

namespace topophase {

/// Anything that maps t ∈ [0, 1] to d phases.
template <class S>
concept ScheduleLike = requires(const S& s, double t) {
    { s.dim() } -> std::convertible_to<int>;
    { s(t) } -> std::convertible_to<std::vector<double>>;
};

struct Breakpoint {
    double t;
    std::vector<double> phases;  // radians
};

inline constexpr double kSuTolerance = 1e-12;
inline constexpr int kLoadCheckGrid = 1001;

class PhaseSchedule {
public:
    enum class Kind { Builtin, Custom };

    /// Piecewise-linear schedule. Structure is validated here; the SU(d) and
    /// ξ(0) = 0 conditions are only enforced by load_schedule_json so that
    /// violators can still be built and inspected with check_su.
    static PhaseSchedule custom(int dim, std::vector<Breakpoint> breakpoints) {
        if (dim < 2) throw Error(ErrorKind::InvalidDimension, "schedule dimension must be at least 2");
        if (breakpoints.empty()) throw Error(ErrorKind::InvalidArgument, "custom schedule has no breakpoints");
        for (std::size_t k = 0; k < breakpoints.size(); ++k) {
            const auto& bp = breakpoints[k];
            if (!(bp.t >= 0.0 && bp.t <= 1.0)) {
                throw Error(ErrorKind::OutOfRange, "breakpoint t must lie in [0, 1]");
            }
            if (static_cast<int>(bp.phases.size()) != dim) {
                throw Error(ErrorKind::DimensionMismatch, "breakpoint phase count differs from dim");
            }
            if (k > 0 && !(bp.t > breakpoints[k - 1].t)) {
                throw Error(ErrorKind::InvalidArgument, "breakpoint t values must be strictly increasing");
            }
        }
        return PhaseSchedule(Kind::Custom, dim, std::move(breakpoints));
    }

    static PhaseSchedule builtin(int dim) {
        if (dim < 2 || dim > 4) {
            throw Error(ErrorKind::UnsupportedDimension,
                        "built-in schedules exist for d = 2, 3, 4 only (got " + std::to_string(dim) + ")");
        }
        return PhaseSchedule(Kind::Builtin, dim, {});
    }

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }

    std::vector<double> eval(double t) const {
        if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::OutOfRange, "t out of range [0, 1]");
        return kind_ == Kind::Builtin ? eval_builtin(t) : eval_custom(t);
    }

    std::vector<double> operator()(double t) const { return eval(t); }

private:
    PhaseSchedule(Kind kind, int dim, std::vector<Breakpoint> bps)
        : kind_(kind), dim_(dim), breakpoints_(std::move(bps)) {}

    // Heaviside step with H(0) = 1.
    static double step(double x) { return x >= 0.0 ? 1.0 : 0.0; }

    std::vector<double> eval_builtin(double t) const {
        const double h = step(t - 0.5);
        switch (dim_) {
            case 2:
                return {kPi * t, -kPi * t};
            case 3:
                return {2.0 * kPi / 3.0 * (2.0 * t - (2.0 * t - 1.0) * h),
                        -4.0 * kPi / 3.0 * t,
                        2.0 * kPi / 3.0 * (2.0 * t - 1.0) * h};
            default:
                return {kPi / 2.0 * t,
                        -kPi / 2.0 * t + kPi * (1.0 - 2.0 * t) * h,
                        3.0 * kPi / 2.0 * t - kPi * (1.0 - 2.0 * t) * h,
                        -3.0 * kPi / 2.0 * t};
        }
    }

    std::vector<double> eval_custom(double t) const {
        const auto& bps = breakpoints_;
        if (t <= bps.front().t) return bps.front().phases;
        if (t >= bps.back().t) return bps.back().phases;
        auto hi = std::upper_bound(bps.begin(), bps.end(), t,
                                   [](double value, const Breakpoint& bp) { return value < bp.t; });
        auto lo = std::prev(hi);
        const double w = (t - lo->t) / (hi->t - lo->t);
        std::vector<double> out(dim_);
        for (int k = 0; k < dim_; ++k) out[k] = (1.0 - w) * lo->phases[k] + w * hi->phases[k];
        return out;
    }

    Kind kind_;
    int dim_;
    std::vector<Breakpoint> breakpoints_;
};

inline PhaseSchedule builtin_schedule(int d) { return PhaseSchedule::builtin(d); }

inline std::vector<double> eval(const PhaseSchedule& s, double t) { return s.eval(t); }

/// Σ_k ξ_k(t_j) = 0 on a uniform grid of `grid` points covering [0, 1].
template <ScheduleLike S>
bool check_su(const S& s, int grid) {
    if (grid < 2) throw Error(ErrorKind::InvalidArgument, "check_su grid needs at least 2 points");
    for (int j = 0; j < grid; ++j) {
        const double t = static_cast<double>(j) / (grid - 1);
        const auto xi = s(t);
        if (std::abs(std::accumulate(xi.begin(), xi.end(), 0.0)) > kSuTolerance) return false;
    }
    return true;
}

/// Wraps a schedule with a monotone map of [0, 1] onto itself.
template <ScheduleLike S, class Map>
class Reparameterized {
public:
    Reparameterized(const S& base, Map map) : base_(base), map_(std::move(map)) {}
    int dim() const { return base_.dim(); }
    std::vector<double> operator()(double t) const { return base_(map_(t)); }

private:
    const S& base_;
    Map map_;
};

// File form: {"dim": d, "breakpoints": [[t, [deg, ...]], ...]}.

inline PhaseSchedule schedule_from_json(const nlohmann::json& j) {
    PhaseSchedule schedule = [&] {
        try {
            const int dim = j.at("dim").get<int>();
            std::vector<Breakpoint> bps;
            for (const auto& entry : j.at("breakpoints")) {
                if (!entry.is_array() || entry.size() != 2) {
                    throw Error(ErrorKind::Parse, "breakpoint entries must be [t, [degrees...]]");
                }
                Breakpoint bp{entry[0].get<double>(), {}};
                for (const auto& deg : entry[1]) bp.phases.push_back(deg_to_rad(deg.get<double>()));
                bps.push_back(std::move(bp));
            }
            return PhaseSchedule::custom(dim, std::move(bps));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::Parse, std::string("malformed schedule JSON: ") + e.what());
        }
    }();
    for (double xi0 : schedule.eval(0.0)) {
        if (std::abs(xi0) > kSuTolerance) throw Error(ErrorKind::InvalidArgument, "schedule must start at xi(0) = 0");
    }
    if (!check_su(schedule, kLoadCheckGrid)) {
        throw Error(ErrorKind::NotSpecialUnitary, "schedule violates sum_k xi_k(t) = 0");
    }
    return schedule;
}

inline nlohmann::json to_json(const PhaseSchedule& s) {
    nlohmann::json bps = nlohmann::json::array();
    if (s.kind() == PhaseSchedule::Kind::Custom) {
        for (const auto& bp : s.breakpoints()) {
            nlohmann::json degs = nlohmann::json::array();
            for (double x : bp.phases) degs.push_back(rad_to_deg(x));
            bps.push_back({bp.t, std::move(degs)});
        }
        return {{"dim", s.dim()}, {"breakpoints", std::move(bps)}};
    }
    return {{"dim", s.dim()}, {"builtin", true}};
}

inline PhaseSchedule load_schedule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open schedule file " + path);
    try {
        return schedule_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, "cannot parse schedule file " + path + ": " + e.what());
    }
}

}  // namespace topophase
