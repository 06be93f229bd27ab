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

// Sinusoidal fringe fitting, y(θ) = A (1 − v cos(aθ + b)), by damped
// least squares (Levenberg-Marquardt with Marquardt diagonal scaling).

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include <Eigen/Dense>
#include <json.hpp>

#include "topophase/angles.hpp"
#include "topophase/error.hpp"
#include "topophase/sagnac.hpp"

namespace topophase {

struct FitResult {
    double amplitude = 0.0;   // A, in the units of the scan values
    double visibility = 0.0;  // v
    double frequency = 4.0;   // a, per radian of θ
    double phase = 0.0;       // b, radians in [0, 2π)
    Eigen::Matrix4d covariance = Eigen::Matrix4d::Zero();  // order (A, v, a, b)
    double rss = 0.0;
    int iterations = 0;
    bool phase_defined = true;  // false for flat data, where b means nothing

    double sigma_amplitude() const { return std::sqrt(covariance(0, 0)); }
    double sigma_visibility() const { return std::sqrt(covariance(1, 1)); }
    double sigma_frequency() const { return std::sqrt(covariance(2, 2)); }
    double sigma_phase() const { return std::sqrt(covariance(3, 3)); }

    double model(double theta) const {
        return amplitude * (1.0 - visibility * std::cos(frequency * theta + phase));
    }
};

struct FitOptions {
    int max_iterations = 200;
    double rss_rel_tolerance = 1e-10;
    int phase_grid = 36;
    double initial_frequency = 4.0;
};

inline constexpr int kMinFitPoints = 8;
inline constexpr double kFlatRelTolerance = 1e-12;

namespace detail {

using Params = Eigen::Vector4d;

inline double fringe_model(const Params& p, double theta) {
    return p(0) * (1.0 - p(1) * std::cos(p(2) * theta + p(3)));
}

inline double residual_ss(const FringeScan& scan, const Params& p) {
    double rss = 0.0;
    for (const auto& pt : scan.points) {
        const double r = pt.value - fringe_model(p, pt.theta);
        rss += r * r;
    }
    return rss;
}

// Normal matrix JᵀJ and gradient Jᵀr at p.
inline std::pair<Eigen::Matrix4d, Eigen::Vector4d> normal_equations(const FringeScan& scan, const Params& p) {
    Eigen::Matrix4d jtj = Eigen::Matrix4d::Zero();
    Eigen::Vector4d jtr = Eigen::Vector4d::Zero();
    for (const auto& pt : scan.points) {
        const double arg = p(2) * pt.theta + p(3);
        const double c = std::cos(arg);
        const double s = std::sin(arg);
        Eigen::Vector4d j;
        j << 1.0 - p(1) * c, -p(0) * c, p(0) * p(1) * s * pt.theta, p(0) * p(1) * s;
        jtj.noalias() += j * j.transpose();
        jtr.noalias() += j * (pt.value - fringe_model(p, pt.theta));
    }
    return {jtj, jtr};
}

// Maps (A, v, a, b) onto the representative with v >= 0, a > 0, b ∈ [0, 2π).
inline Params canonical(Params p) {
    if (p(1) < 0.0) {
        p(1) = -p(1);
        p(3) += kPi;
    }
    if (p(2) < 0.0) {
        p(2) = -p(2);
        p(3) = -p(3);
    }
    p(3) = wrap_positive(p(3));
    return p;
}

}  // namespace detail

/// (max − min)/(max + min) over the scan values; 0 when everything is zero.
inline double visibility_estimate(const FringeScan& scan) {
    if (scan.points.empty()) throw Error(ErrorKind::TooFewPoints, "visibility of an empty scan");
    auto [lo, hi] = std::minmax_element(scan.points.begin(), scan.points.end(),
                                        [](const FringePoint& a, const FringePoint& b) { return a.value < b.value; });
    const double sum = hi->value + lo->value;
    return sum == 0.0 ? 0.0 : (hi->value - lo->value) / sum;
}

inline FitResult fit_fringe(const FringeScan& scan, const FitOptions& opt = {}) {
    const auto& pts = scan.points;
    if (static_cast<int>(pts.size()) < kMinFitPoints) {
        throw Error(ErrorKind::TooFewPoints, "fringe fit needs at least 8 points");
    }
    const double span = pts.back().theta - pts.front().theta;
    if (span < kTwoPi / opt.initial_frequency - 1e-12) {
        throw Error(ErrorKind::TooFewPoints, "scan does not cover one fringe period");
    }

    const double n = static_cast<double>(pts.size());
    const double mean = std::accumulate(pts.begin(), pts.end(), 0.0,
                                        [](double acc, const FringePoint& p) { return acc + p.value; }) / n;
    auto [lo_it, hi_it] = std::minmax_element(pts.begin(), pts.end(),
                                              [](const FringePoint& a, const FringePoint& b) { return a.value < b.value; });
    const double lo = lo_it->value;
    const double hi = hi_it->value;

    FitResult out;
    out.frequency = opt.initial_frequency;
    if (hi - lo <= kFlatRelTolerance * std::max(std::abs(hi), std::abs(lo))) {
        out.amplitude = mean;
        out.visibility = 0.0;
        out.phase = 0.0;
        out.phase_defined = false;
        out.rss = detail::residual_ss(scan, detail::Params(mean, 0.0, opt.initial_frequency, 0.0));
        return out;
    }

    detail::Params p(mean, (hi + lo) > 0.0 ? (hi - lo) / (hi + lo) : 0.0, opt.initial_frequency, 0.0);
    {
        double best = std::numeric_limits<double>::infinity();
        for (int k = 0; k < opt.phase_grid; ++k) {
            detail::Params trial = p;
            trial(3) = kTwoPi * k / opt.phase_grid;
            const double r = detail::residual_ss(scan, trial);
            if (r < best) {
                best = r;
                p = trial;
            }
        }
    }

    double rss = detail::residual_ss(scan, p);
    double lambda = 1e-3;
    int iter = 0;
    for (; iter < opt.max_iterations; ++iter) {
        auto [jtj, jtr] = detail::normal_equations(scan, p);
        bool accepted = false;
        double new_rss = rss;
        for (int attempt = 0; attempt < 60 && !accepted; ++attempt) {
            Eigen::Matrix4d damped = jtj;
            for (int k = 0; k < 4; ++k) damped(k, k) += lambda * std::max(jtj(k, k), 1e-300);
            const Eigen::Vector4d delta = damped.ldlt().solve(jtr);
            const detail::Params trial = p + delta;
            const double r = detail::residual_ss(scan, trial);
            if (std::isfinite(r) && r <= rss) {
                p = trial;
                new_rss = r;
                accepted = true;
                lambda = std::max(lambda * 0.1, 1e-12);
            } else {
                lambda *= 10.0;
            }
        }
        if (!accepted) break;  // no downhill step left: at the minimum to rounding
        const double change = rss > 0.0 ? (rss - new_rss) / rss : 0.0;
        rss = new_rss;
        if (change < opt.rss_rel_tolerance) {
            ++iter;
            break;
        }
    }

    p = detail::canonical(p);
    out.amplitude = p(0);
    out.visibility = std::min(p(1), 1.0);
    out.frequency = p(2);
    out.phase = p(3);
    out.rss = rss;
    out.iterations = iter;

    const auto [jtj, jtr] = detail::normal_equations(scan, p);
    const double dof = std::max(1.0, n - 4.0);
    Eigen::FullPivLU<Eigen::Matrix4d> lu(jtj);
    if (lu.isInvertible()) out.covariance = lu.inverse() * (rss / dof);
    else out.covariance.setConstant(std::numeric_limits<double>::infinity());
    return out;
}

inline constexpr double kMinShiftVisibility = 0.05;

struct PhaseShift {
    double shift;  // radians in [0, 2π)
    double sigma;  // radians
};

/// Displacement of the operated fringe relative to the reference, in units
/// of fringe phase: y_op(θ) ≈ y_ref(θ − shift/a), i.e. b_ref − b_op.
inline PhaseShift phase_shift(const FitResult& ref, const FitResult& op) {
    for (const FitResult* f : {&ref, &op}) {
        if (!f->phase_defined || !(f->visibility > kMinShiftVisibility)) {
            throw Error(ErrorKind::LowVisibility, "visibility too low for a phase measurement (v = " +
                                                      std::to_string(f->visibility) + ")");
        }
    }
    const double shift = wrap_positive(ref.phase - op.phase);
    const double sigma = std::sqrt(ref.covariance(3, 3) + op.covariance(3, 3));
    return {shift, sigma};
}

// JSON: a "degrees" block for people and a "radians" block for programs.
inline nlohmann::json to_json(const FitResult& f) {
    nlohmann::json cov = nlohmann::json::array();
    for (int r = 0; r < 4; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < 4; ++c) row.push_back(f.covariance(r, c));
        cov.push_back(std::move(row));
    }
    nlohmann::json j;
    j["degrees"] = {
        {"amplitude", f.amplitude},
        {"visibility", f.visibility},
        {"frequency", f.frequency},
        {"phase_deg", rad_to_deg(f.phase)},
        {"sigma_amplitude", f.sigma_amplitude()},
        {"sigma_visibility", f.sigma_visibility()},
        {"sigma_frequency", f.sigma_frequency()},
        {"sigma_phase_deg", rad_to_deg(f.sigma_phase())},
    };
    j["radians"] = {
        {"amplitude", f.amplitude},
        {"visibility", f.visibility},
        {"frequency", f.frequency},
        {"phase", f.phase},
        {"covariance", std::move(cov)},
        {"rss", f.rss},
    };
    j["phase_defined"] = f.phase_defined;
    j["iterations"] = f.iterations;
    return j;
}

inline nlohmann::json to_json(const PhaseShift& s) {
    return {{"degrees", {{"shift_deg", rad_to_deg(s.shift)}, {"sigma_deg", rad_to_deg(s.sigma)}}},
            {"radians", {{"shift", s.shift}, {"sigma", s.sigma}}}};
}

}  // namespace topophase
