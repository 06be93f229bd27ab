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

// Jones calculus in the H/V basis. Global phases are never tracked as
// observables; comparisons "up to global phase" go through
// equal_up_to_global_phase().
//
// Conventions:
//   HWP(α) = [[cos2α, sin2α], [sin2α, −cos2α]]
//   QWP(α) = R(α) · diag(1, i) · R(−α),  R the real rotation matrix

#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "topophase/angles.hpp"
#include "topophase/error.hpp"

namespace topophase {

using JonesMatrix = Eigen::Matrix2cd;
using JonesVector = Eigen::Vector2cd;

inline constexpr double kDiagonalTolerance = 1e-9;

inline JonesVector horizontal() { return JonesVector(1.0, 0.0); }
inline JonesVector vertical() { return JonesVector(0.0, 1.0); }

inline JonesMatrix rotation(double angle) {
    JonesMatrix r;
    r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return r;
}

inline JonesMatrix hwp(double angle) {
    const double c = std::cos(2.0 * angle);
    const double s = std::sin(2.0 * angle);
    JonesMatrix m;
    m << c, s, s, -c;
    return m;
}

inline JonesMatrix qwp(double angle) {
    JonesMatrix retarder = JonesMatrix::Zero();
    retarder(0, 0) = 1.0;
    retarder(1, 1) = std::complex<double>(0.0, 1.0);
    return rotation(angle) * retarder * rotation(-angle);
}

/// Product of the plates in propagation order: ms.front() acts first.
inline JonesMatrix compose(std::span<const JonesMatrix> ms) {
    if (ms.empty()) throw Error(ErrorKind::InvalidArgument, "compose needs at least one matrix");
    JonesMatrix acc = ms.front();
    for (std::size_t k = 1; k < ms.size(); ++k) acc = ms[k] * acc;
    return acc;
}

inline JonesMatrix compose(std::initializer_list<JonesMatrix> ms) {
    return compose(std::span<const JonesMatrix>(ms.begin(), ms.size()));
}

/// The plate stack exactly as mounted in the loop: QWP 45°, HWP φ, HWP φ+θ,
/// QWP 45°. The two half-wave plates make a rotation by 2θ and the
/// quarter-wave plates turn it into an H↔V exchange with relative phase 4θ:
/// [[0, e^{−2iθ}], [e^{2iθ}, 0]] up to global phase.
inline JonesMatrix phase_shifter_stack(double phi, double theta) {
    return compose({qwp(kPi / 4), hwp(phi), hwp(phi + theta), qwp(kPi / 4)});
}

/// Diagonal variable retarder: the V component picks up +4θ relative to H,
/// independent of φ. Entrance QWP crossed at −45°.
inline JonesMatrix phase_shifter(double phi, double theta) {
    return compose({qwp(-kPi / 4), hwp(phi), hwp(phi + theta), qwp(kPi / 4)});
}

inline bool is_unitary(const JonesMatrix& m, double tol = 1e-12) {
    return (m.adjoint() * m - JonesMatrix::Identity()).norm() < tol;
}

inline bool is_diagonal(const JonesMatrix& m, double tol = kDiagonalTolerance) {
    return std::abs(m(0, 1)) < tol && std::abs(m(1, 0)) < tol;
}

/// arg(M_vv / M_hh) in [0, 2π).
inline double relative_phase(const JonesMatrix& m) {
    if (!is_diagonal(m)) {
        throw Error(ErrorKind::NotDiagonal, "relative_phase needs a matrix diagonal up to global phase");
    }
    return wrap_positive(std::arg(m(1, 1) / m(0, 0)));
}

/// True when a = e^{iγ} b for some γ.
inline bool equal_up_to_global_phase(const JonesMatrix& a, const JonesMatrix& b, double tol = 1e-12) {
    const std::complex<double> overlap = (b.adjoint() * a).trace();
    if (std::abs(overlap) < tol) return a.norm() < tol && b.norm() < tol;
    const std::complex<double> phase = overlap / std::abs(overlap);
    return (a - phase * b).norm() < tol;
}

inline std::string debug_string(const JonesMatrix& m) {
    std::ostringstream out;
    out.precision(6);
    out << std::fixed;
    for (int r = 0; r < 2; ++r) {
        out << '[';
        for (int c = 0; c < 2; ++c) {
            out << (c ? ", " : "") << m(r, c).real() << (m(r, c).imag() < 0 ? " - " : " + ")
                << std::abs(m(r, c).imag()) << 'i';
        }
        out << "]\n";
    }
    return out.str();
}

}  // namespace topophase
