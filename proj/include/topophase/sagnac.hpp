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

// Two-photon coincidences at the exit of the polarization Sagnac loop.
//
// Three routes to the same number:
//   coincidence_full   ¼ Σ_{m,n} |α_mn e^{iξ_m} − e^{4iθ} α_nm|²
//   coincidence_mes    (1/d) Σ_m sin²[(ξ_m − 4θ)/2], antisymmetric MES only
//   circuit_oracle     photon-by-photon propagation through the optics

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "topophase/angles.hpp"
#include "topophase/error.hpp"
#include "topophase/phase_schedule.hpp"
#include "topophase/polarization.hpp"
#include "topophase/qudit_state.hpp"
#include "topophase/sampling.hpp"

namespace topophase {

namespace detail {

inline void require_phase_count(const BipartiteQuditState& s, std::span<const double> xi) {
    if (static_cast<int>(xi.size()) != s.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "phase list length differs from state dimension");
    }
}

}  // namespace detail

inline double coincidence_full(const BipartiteQuditState& s, std::span<const double> xi, double theta) {
    detail::require_phase_count(s, xi);
    const int d = s.dim();
    const Complex ref = std::polar(1.0, 4.0 * theta);
    double sum = 0.0;
    for (int m = 0; m < d; ++m) {
        const Complex slm = std::polar(1.0, xi[m]);
        for (int n = 0; n < d; ++n) sum += std::norm(s(m, n) * slm - ref * s(n, m));
    }
    return 0.25 * sum;
}

inline double coincidence_mes(int d, std::span<const double> xi, double theta) {
    if (static_cast<int>(xi.size()) != d) {
        throw Error(ErrorKind::DimensionMismatch, "phase list length differs from dimension");
    }
    double sum = 0.0;
    for (double x : xi) {
        const double s = std::sin(0.5 * (x - 4.0 * theta));
        sum += s * s;
    }
    return sum / d;
}

/// Optical elements the oracle threads photons through. The phase shifter is
/// swappable so a miswired plate stack can be injected in tests.
struct SagnacOptics {
    std::function<JonesMatrix(double phi, double theta)> phase_shifter = phase_shifter_stack;
    double phase_shifter_phi = 0.0;
};

/// Propagates the signal⊗idler ket (slit ⊗ polarization for each photon)
/// through the loop and the detection stage:
///   signal: HWP 22.5°, phase-shifter stack, SLM on H
///   idler (counter-propagating): SLM on H, phase-shifter stack, HWP −22.5°
///   exit PBS: H transmitted, V reflected with a factor i; signal-H and
///     idler-V go to D2, signal-V and idler-H go to D1
///   erasers: HWP −22.5° before D1, HWP +22.5° before D2, then H projection
/// The coincidence probability sums |amplitude|² over orthonormal slit
/// modes at each detector and is normalized by its ideal maximum ¼.
inline double circuit_oracle(const BipartiteQuditState& s, std::span<const double> xi, double theta,
                             const SagnacOptics& optics = {}) {
    detail::require_phase_count(s, xi);
    const int d = s.dim();
    constexpr int kH = 0;
    constexpr int kV = 1;
    const Complex i_unit(0.0, 1.0);

    const JonesMatrix shifter = optics.phase_shifter(optics.phase_shifter_phi, theta);
    const JonesMatrix signal_plates = shifter * hwp(kPi / 8);
    const JonesMatrix idler_plates = hwp(-kPi / 8) * shifter;

    // Single-photon propagators: slit m, input polarization → output (slit m, pol).
    // The SLM sits after the plates for the signal and before them for the idler.
    auto signal_out = [&](int m, const JonesVector& in) {
        JonesVector out = signal_plates * in;
        out(kH) *= std::polar(1.0, xi[m]);
        return out;
    };
    auto idler_out = [&](int n, const JonesVector& in) {
        JonesVector v = in;
        v(kH) *= std::polar(1.0, xi[n]);
        return JonesVector(idler_plates * v);
    };

    // Eraser + polarizer projection amplitudes ⟨H| HWP(±22.5°) |pol⟩.
    const JonesVector h = horizontal();
    const auto proj_d1 = (h.transpose() * hwp(-kPi / 8)).eval();
    const auto proj_d2 = (h.transpose() * hwp(kPi / 8)).eval();
    // Exit-port factors: reflection picks up i.
    const std::array<Complex, 2> port_factor{Complex(1.0), i_unit};

    // amplitude[p][q]: D1 registers slit mode p, D2 registers slit mode q.
    Eigen::MatrixXcd amplitude = Eigen::MatrixXcd::Zero(d, d);
    for (int m = 0; m < d; ++m) {
        const JonesVector sig = signal_out(m, horizontal());
        for (int n = 0; n < d; ++n) {
            const Complex a0 = i_unit * s(m, n);  // |Ψ0⟩ = i Σ α_mn |mH⟩_s |nV⟩_i
            if (a0 == Complex(0.0)) continue;
            const JonesVector idl = idler_out(n, vertical());
            // signal-H & idler-H: idler at D1 (mode n), signal at D2 (mode m)
            amplitude(n, m) += a0 * sig(kH) * idl(kH) * port_factor[kH] * port_factor[kH] *
                               proj_d2(kH) * proj_d1(kH);
            // signal-V & idler-V: signal at D1 (mode m), idler at D2 (mode n)
            amplitude(m, n) += a0 * sig(kV) * idl(kV) * port_factor[kV] * port_factor[kV] *
                               proj_d1(kV) * proj_d2(kV);
            // HV / VH components put both photons in one port: no coincidence
        }
    }
    constexpr double kIdealCoincidence = 0.25;
    return amplitude.squaredNorm() / kIdealCoincidence;
}

enum class ScanMode { Exact, Sampled };

inline std::string to_string(ScanMode mode) { return mode == ScanMode::Exact ? "exact" : "sampled"; }

inline ScanMode scan_mode_from_string(const std::string& s) {
    if (s == "exact") return ScanMode::Exact;
    if (s == "sampled") return ScanMode::Sampled;
    throw Error(ErrorKind::Parse, "mode must be \"exact\" or \"sampled\", got \"" + s + "\"");
}

inline constexpr double kDefaultContrast = 0.35;
inline constexpr int kDefaultCountsPerPoint = 1000;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// θ grid in radians: start..stop inclusive in `step` increments, all in degrees.
inline std::vector<double> theta_grid_deg(double start, double stop, double step) {
    if (!(step > 0.0) || !(stop >= start)) {
        throw Error(ErrorKind::InvalidArgument, "theta grid needs step > 0 and stop >= start");
    }
    std::vector<double> out;
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    out.reserve(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) out.push_back(deg_to_rad(start + step * static_cast<double>(k)));
    return out;
}

/// 0°…180° in 5° steps, 37 points.
inline std::vector<double> default_theta_grid() { return theta_grid_deg(0.0, 180.0, 5.0); }

struct ExperimentConfig {
    int dim;
    PhaseSchedule schedule;
    BipartiteQuditState state;
    std::vector<double> theta_grid;  // radians
    std::vector<double> t_values;
    int counts_per_point = kDefaultCountsPerPoint;
    double contrast = kDefaultContrast;
    std::uint64_t rng_seed = kDefaultSeed;
    ScanMode mode = ScanMode::Sampled;

    /// Antisymmetric MES, built-in schedule, default grid, t ∈ {0, ½, 1}.
    static ExperimentConfig defaults(int d) {
        return ExperimentConfig{d, builtin_schedule(d), make_antisymmetric_mes(d), default_theta_grid(),
                                {0.0, 0.5, 1.0}};
    }

    void validate() const {
        if (schedule.dim() != dim || state.dim() != dim) {
            throw Error(ErrorKind::DimensionMismatch, "schedule, state and dim must agree");
        }
        if (theta_grid.empty()) throw Error(ErrorKind::InvalidArgument, "theta grid is empty");
        for (std::size_t k = 1; k < theta_grid.size(); ++k) {
            if (!(theta_grid[k] > theta_grid[k - 1])) {
                throw Error(ErrorKind::InvalidArgument, "theta grid must be strictly increasing");
            }
        }
        if (counts_per_point < 1) throw Error(ErrorKind::InvalidArgument, "counts_per_point must be >= 1");
        if (!(contrast >= 0.0 && contrast <= 1.0)) {
            throw Error(ErrorKind::OutOfRange, "contrast must lie in [0, 1]");
        }
        for (double t : t_values) {
            if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::OutOfRange, "t out of range [0, 1]");
        }
    }
};

struct FringePoint {
    double theta;  // radians
    double value;  // counts (sampled) or probability (exact)
};

struct FringeScan {
    double t = 0.0;
    ScanMode mode = ScanMode::Exact;
    std::vector<FringePoint> points;

    void validate() const {
        for (std::size_t k = 1; k < points.size(); ++k) {
            if (!(points[k].theta > points[k - 1].theta)) {
                throw Error(ErrorKind::InvalidArgument, "scan thetas must be strictly increasing");
            }
        }
        for (const auto& p : points) {
            if (mode == ScanMode::Exact && !(p.value >= 0.0 && p.value <= 1.0)) {
                throw Error(ErrorKind::OutOfRange, "exact-mode probabilities must lie in [0, 1]");
            }
            if (mode == ScanMode::Sampled && !(p.value >= 0.0)) {
                throw Error(ErrorKind::OutOfRange, "counts must be non-negative");
            }
        }
    }
};

/// Per-point stream seed. t and the dimension enter the key so that the
/// reference and operated scans of one run carry independent noise.
inline std::uint64_t scan_point_seed(std::uint64_t seed, int dim, double t, std::size_t index) {
    return mix_seed({seed, static_cast<std::uint64_t>(dim), std::bit_cast<std::uint64_t>(t),
                     static_cast<std::uint64_t>(index)});
}

/// Mode-mismatch model: the fringe's AC part about ½ is scaled by contrast.
inline double degraded_probability(double p, double contrast) { return 0.5 + contrast * (p - 0.5); }

inline FringeScan generate_scan(const ExperimentConfig& cfg, double t) {
    cfg.validate();
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::OutOfRange, "t out of range [0, 1]");
    const std::vector<double> xi = cfg.schedule(t);

    FringeScan scan;
    scan.t = t;
    scan.mode = cfg.mode;
    scan.points.reserve(cfg.theta_grid.size());
    for (std::size_t j = 0; j < cfg.theta_grid.size(); ++j) {
        const double theta = cfg.theta_grid[j];
        // clamp only strips rounding excursions such as 1 + 2^-52
        const double p =
            std::clamp(degraded_probability(coincidence_full(cfg.state, xi, theta), cfg.contrast), 0.0, 1.0);
        if (cfg.mode == ScanMode::Exact) {
            scan.points.push_back({theta, p});
        } else {
            RandomStream rng(scan_point_seed(cfg.rng_seed, cfg.dim, t, j));
            const auto counts = sample_poisson(static_cast<double>(cfg.counts_per_point) * p, rng);
            scan.points.push_back({theta, static_cast<double>(counts)});
        }
    }
    return scan;
}

}  // namespace topophase
