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

// Randomized self-check suite behind `topophase verify`.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "topophase/fringe_fit.hpp"
#include "topophase/kinematic.hpp"
#include "topophase/polarization.hpp"
#include "topophase/sagnac.hpp"

namespace topophase {

inline constexpr double kOracleTolerance = 1e-12;

/// Haar-ish random pure state: i.i.d. complex Gaussian amplitudes, normalized.
inline BipartiteQuditState random_state(int d, RandomStream& rng) {
    AmplitudeMatrix a(d, d);
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) a(m, n) = Complex(rng.normal(), rng.normal());
    a /= a.norm();
    return BipartiteQuditState(std::move(a));
}

inline std::vector<double> random_phases(int d, RandomStream& rng) {
    std::vector<double> xi(d);
    for (auto& x : xi) x = rng.uniform(-kTwoPi, kTwoPi);
    return xi;
}

struct CheckOutcome {
    std::string name;
    bool passed = true;
    std::string counterexample;
};

struct VerifyReport {
    std::vector<CheckOutcome> checks;
    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

namespace detail {

inline std::string format_phases(const std::vector<double>& xi) {
    std::string s = "[";
    for (std::size_t k = 0; k < xi.size(); ++k) s += fmt::format("{}{:.17g}", k ? ", " : "", xi[k]);
    return s + "]";
}

}  // namespace detail

/// Runs the oracle-equivalence, MES-reduction, SU(d) and closed-loop
/// checks. `optics` feeds the circuit oracle, so a miswired phase shifter
/// shows up as an oracle-equivalence counterexample.
inline VerifyReport run_verification(int trials, std::uint64_t seed, const SagnacOptics& optics = {}) {
    if (trials < 1) throw Error(ErrorKind::InvalidArgument, "--trials must be at least 1");
    VerifyReport report;
    RandomStream rng(mix_seed({seed, 0x5A6Eull}));

    {
        CheckOutcome c{"oracle equivalence (coincidence_full vs circuit_oracle)", true, {}};
        for (int k = 0; k < trials && c.passed; ++k) {
            const int d = 2 + static_cast<int>(rng.bits() % 5);
            const auto s = random_state(d, rng);
            const auto xi = random_phases(d, rng);
            const double theta = rng.uniform(0.0, kPi);
            const double full = coincidence_full(s, xi, theta);
            const double circ = circuit_oracle(s, xi, theta, optics);
            if (!(std::abs(full - circ) < kOracleTolerance)) {
                c.passed = false;
                c.counterexample = fmt::format("trial {}: d={} theta={:.17g} xi={} full={:.17g} oracle={:.17g}", k, d,
                                               theta, detail::format_phases(xi), full, circ);
            }
        }
        report.checks.push_back(std::move(c));
    }
    {
        CheckOutcome c{"closed form on antisymmetric MES (coincidence_full vs coincidence_mes)", true, {}};
        for (int k = 0; k < trials && c.passed; ++k) {
            const int d = 2 + static_cast<int>(rng.bits() % 5);
            const auto xi = random_phases(d, rng);
            const double theta = rng.uniform(0.0, kPi);
            const double full = coincidence_full(make_antisymmetric_mes(d), xi, theta);
            const double mes = coincidence_mes(d, xi, theta);
            if (!(std::abs(full - mes) < kOracleTolerance)) {
                c.passed = false;
                c.counterexample = fmt::format("trial {}: d={} theta={:.17g} xi={} full={:.17g} mes={:.17g}", k, d,
                                               theta, detail::format_phases(xi), full, mes);
            }
        }
        report.checks.push_back(std::move(c));
    }
    {
        CheckOutcome c{"built-in schedules satisfy sum xi = 0", true, {}};
        for (int d = 2; d <= 4 && c.passed; ++d) {
            if (!check_su(builtin_schedule(d), kLoadCheckGrid)) {
                c.passed = false;
                c.counterexample = fmt::format("d={}", d);
            }
        }
        report.checks.push_back(std::move(c));
    }
    {
        CheckOutcome c{"interferometric shift matches kinematic geometric phase", true, {}};
        for (int d = 2; d <= 4 && c.passed; ++d) {
            auto cfg = ExperimentConfig::defaults(d);
            cfg.mode = ScanMode::Exact;
            cfg.contrast = 1.0;
            const auto ref = fit_fringe(generate_scan(cfg, 0.0));
            const auto op = fit_fringe(generate_scan(cfg, 1.0));
            const double shift = phase_shift(ref, op).shift;
            const double geo = kinematic_phase(cfg.state, cfg.schedule, 10000).geometric;
            if (!(angular_distance(shift, geo) < 1e-6)) {
                c.passed = false;
                c.counterexample = fmt::format("d={} shift={:.12g} geometric={:.12g}", d, shift, geo);
            }
        }
        report.checks.push_back(std::move(c));
    }
    return report;
}

}  // namespace topophase
