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

#include "topophase/kinematic.hpp"

#include <cmath>

#include "gtest/gtest.h"

#include "topophase/fringe_fit.hpp"
#include "topophase/sagnac.hpp"
#include "topophase/verify.hpp"

using namespace topophase;

TEST(Kinematic, QutritGeometricPhase) {
    const auto k = kinematic_phase(make_antisymmetric_mes(3), builtin_schedule(3), 10000);
    EXPECT_NEAR(angular_distance(k.geometric, 2 * kPi / 3), 0.0, 1e-8);
    EXPECT_LT(std::abs(k.dynamical), 1e-9);
    EXPECT_NEAR(angular_distance(k.total, 2 * kPi / 3), 0.0, 1e-12);
    EXPECT_EQ(k.steps, 10000);
}

TEST(Kinematic, QubitAndQuquart) {
    const auto k2 = kinematic_phase(make_antisymmetric_mes(2), builtin_schedule(2), 10000);
    EXPECT_NEAR(angular_distance(k2.geometric, kPi), 0.0, 1e-8);
    const auto k4 = kinematic_phase(make_antisymmetric_mes(4), builtin_schedule(4), 10000);
    EXPECT_NEAR(angular_distance(k4.geometric, kPi / 2), 0.0, 1e-8);
    EXPECT_LT(std::abs(k4.dynamical), 1e-9);
}

TEST(Kinematic, StaticScheduleHasNoPhase) {
    const auto sched = PhaseSchedule::custom(3, {{0.0, {0.0, 0.0, 0.0}}, {1.0, {0.0, 0.0, 0.0}}});
    const auto k = kinematic_phase(make_antisymmetric_mes(3), sched, 100);
    EXPECT_EQ(k.total, 0.0);
    EXPECT_EQ(k.dynamical, 0.0);
    EXPECT_EQ(k.geometric, 0.0);
}

TEST(Kinematic, GlobalPhaseIsPurelyDynamical) {
    // every level picks up the same phase φ(t) = t: no geometric part
    const auto sched = PhaseSchedule::custom(2, {{0.0, {0.0, 0.0}}, {1.0, {1.0, 1.0}}});
    RandomStream rng(3);
    const auto k = kinematic_phase(random_state(2, rng), sched, 1000);
    EXPECT_NEAR(k.total, 1.0, 1e-12);
    EXPECT_NEAR(k.dynamical, 1.0, 1e-9);
    EXPECT_NEAR(k.geometric, 0.0, 1e-9);
}

TEST(Kinematic, ProductStateAccumulatesDynamicalPhase) {
    // |0⟩|0⟩ under ξ = (πt, −πt): total = dynamical = π, geometric 0
    AmplitudeMatrix a = AmplitudeMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    const auto k = kinematic_phase(BipartiteQuditState(a), builtin_schedule(2), 1000);
    EXPECT_NEAR(angular_distance(k.total, kPi), 0.0, 1e-12);
    EXPECT_NEAR(k.dynamical, kPi, 1e-9);
    EXPECT_NEAR(k.geometric, 0.0, 1e-9);
}

TEST(Kinematic, ConvergesWithStepCount) {
    RandomStream rng(8);
    const auto s = random_state(3, rng);
    const auto coarse = kinematic_phase(s, builtin_schedule(3), 200);
    const auto fine = kinematic_phase(s, builtin_schedule(3), 20000);
    EXPECT_NEAR(angular_distance(coarse.geometric, fine.geometric), 0.0, 1e-6);
}

TEST(Kinematic, ReparameterizationInvariant) {
    RandomStream rng(21);
    const auto s = random_state(4, rng);
    const auto base = builtin_schedule(4);
    const Reparameterized squared(base, [](double t) { return t * t; });
    const auto a = kinematic_phase(s, base, 10000);
    const auto b = kinematic_phase(s, squared, 10000);
    EXPECT_NEAR(angular_distance(a.geometric, b.geometric), 0.0, 1e-7);
    EXPECT_NEAR(a.dynamical, b.dynamical, 1e-7);
}

TEST(Kinematic, Errors) {
    const auto mes = make_antisymmetric_mes(3);
    EXPECT_THROW(kinematic_phase(mes, builtin_schedule(3), 99), Error);
    EXPECT_THROW(kinematic_phase(mes, builtin_schedule(3), 101), Error);
    EXPECT_THROW(kinematic_phase(mes, builtin_schedule(2), 100), Error);

    // relative phase π between two equal-weight levels: end ⟂ start
    AmplitudeMatrix a = AmplitudeMatrix::Zero(2, 2);
    a(0, 0) = a(1, 0) = 1.0 / std::sqrt(2.0);
    const auto sched = PhaseSchedule::custom(2, {{0.0, {0.0, 0.0}}, {1.0, {kPi / 2, -kPi / 2}}});
    try {
        kinematic_phase(BipartiteQuditState(a), sched, 100);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateOverlap);
    }
}

TEST(Kinematic, PredictFractional) {
    EXPECT_NEAR(predict_fractional(2, 1), kPi, 1e-15);
    EXPECT_NEAR(predict_fractional(3, 1), 2 * kPi / 3, 1e-15);
    EXPECT_NEAR(predict_fractional(4, 4), 0.0, 1e-15);
    EXPECT_NEAR(predict_fractional(3, 2), 4 * kPi / 3, 1e-15);
    EXPECT_THROW(predict_fractional(1, 1), Error);
}

TEST(KinematicProperty, FringeShiftEqualsGeometricPhase) {
    for (int d = 2; d <= 4; ++d) {
        auto cfg = ExperimentConfig::defaults(d);
        cfg.mode = ScanMode::Exact;
        cfg.contrast = 1.0;
        const auto s = phase_shift(fit_fringe(generate_scan(cfg, 0.0)), fit_fringe(generate_scan(cfg, 1.0)));
        const auto k = kinematic_phase(cfg.state, cfg.schedule, 10000);
        EXPECT_NEAR(angular_distance(s.shift, k.geometric), 0.0, 1e-6) << d;
        EXPECT_NEAR(angular_distance(s.shift, predict_fractional(d, 1)), 0.0, 1e-6) << d;
    }
}
