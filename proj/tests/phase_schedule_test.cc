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

#include "topophase/phase_schedule.hpp"

#include <cmath>
#include <numeric>

#include "gtest/gtest.h"

using namespace topophase;

namespace {

void expect_phases(const std::vector<double>& got, const std::vector<double>& want, double tol = 1e-14) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], want[k], tol) << "component " << k;
}

}  // namespace

TEST(PhaseSchedule, BuiltinEndpoints) {
    expect_phases(builtin_schedule(2).eval(1.0), {kPi, -kPi});
    expect_phases(builtin_schedule(3).eval(1.0), {2 * kPi / 3, -4 * kPi / 3, 2 * kPi / 3});
    expect_phases(builtin_schedule(4).eval(1.0), {kPi / 2, -3 * kPi / 2, 5 * kPi / 2, -3 * kPi / 2});
    for (int d = 2; d <= 4; ++d) expect_phases(builtin_schedule(d).eval(0.0), std::vector<double>(d, 0.0), 0.0);
}

TEST(PhaseSchedule, BuiltinMidpoints) {
    expect_phases(builtin_schedule(3).eval(0.5), {2 * kPi / 3, -2 * kPi / 3, 0.0});
    expect_phases(builtin_schedule(4).eval(0.5), {kPi / 4, -kPi / 4, 3 * kPi / 4, -3 * kPi / 4});
}

TEST(PhaseSchedule, Errors) {
    EXPECT_THROW(builtin_schedule(5), Error);
    EXPECT_THROW(builtin_schedule(1), Error);
    try {
        builtin_schedule(3).eval(1.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::OutOfRange);
    }
    EXPECT_THROW(builtin_schedule(3).eval(-0.01), Error);
}

TEST(PhaseSchedule, CheckSu) {
    EXPECT_TRUE(check_su(builtin_schedule(2), 1001));
    EXPECT_TRUE(check_su(builtin_schedule(3), 1001));
    EXPECT_TRUE(check_su(builtin_schedule(4), 1001));
    const auto bad = PhaseSchedule::custom(2, {{0.0, {0.0, 0.0}}, {1.0, {kPi, 0.0}}});
    EXPECT_FALSE(check_su(bad, 11));
    EXPECT_THROW(check_su(bad, 1), Error);
}

TEST(PhaseScheduleProperty, BuiltinsAreContinuous) {
    // The Heaviside terms carry prefactors that vanish at t = 1/2.
    const int n = 200000;
    for (int d = 2; d <= 4; ++d) {
        const auto s = builtin_schedule(d);
        auto prev = s.eval(0.0);
        double worst = 0.0;
        for (int j = 1; j <= n; ++j) {
            const auto cur = s.eval(static_cast<double>(j) / n);
            for (int k = 0; k < d; ++k) worst = std::max(worst, std::abs(cur[k] - prev[k]));
            prev = cur;
        }
        // largest slope is 7π/2 per unit t, so one step moves < 6e-5
        EXPECT_LT(worst, 7 * kPi / 2 / n + 1e-9) << d;
        // around the breakpoint itself
        const auto below = s.eval(0.5 - 1e-13);
        const auto at = s.eval(0.5);
        for (int k = 0; k < d; ++k) EXPECT_LT(std::abs(below[k] - at[k]), 1e-9);
    }
}

TEST(PhaseScheduleProperty, CyclicEndpointIsCommonPhase) {
    for (int d = 2; d <= 4; ++d) {
        const auto xi = builtin_schedule(d).eval(1.0);
        for (double x : xi) EXPECT_LT(angular_distance(x, kTwoPi / d), 1e-12) << d;
    }
}

TEST(PhaseSchedule, CustomInterpolation) {
    const auto s = PhaseSchedule::custom(2, {{0.0, {0.0, 0.0}}, {0.5, {1.0, -1.0}}, {1.0, {3.0, -3.0}}});
    expect_phases(s.eval(0.25), {0.5, -0.5});
    expect_phases(s.eval(0.5), {1.0, -1.0});
    expect_phases(s.eval(0.75), {2.0, -2.0});
    EXPECT_THROW(PhaseSchedule::custom(2, {{0.5, {0.0, 0.0}}, {0.5, {1.0, -1.0}}}), Error);
    EXPECT_THROW(PhaseSchedule::custom(2, {{0.0, {0.0}}}), Error);
    EXPECT_THROW(PhaseSchedule::custom(2, {{1.5, {0.0, 0.0}}}), Error);
}

TEST(PhaseSchedule, JsonLoaderEnforcesInvariants) {
    const auto ok = schedule_from_json(nlohmann::json::parse(R"({"dim": 3, "breakpoints": [[0, [0, 0, 0]], [1, [120, -240, 120]]]})"));
    expect_phases(ok.eval(1.0), {2 * kPi / 3, -4 * kPi / 3, 2 * kPi / 3}, 1e-14);
    expect_phases(ok.eval(0.5), {kPi / 3, -2 * kPi / 3, kPi / 3}, 1e-14);

    try {
        schedule_from_json(nlohmann::json::parse(R"({"dim": 2, "breakpoints": [[0, [0, 0]], [1, [180, 0]]]})"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotSpecialUnitary);
    }
    EXPECT_THROW(schedule_from_json(nlohmann::json::parse(R"({"dim": 2, "breakpoints": [[0, [10, -10]], [1, [180, -180]]]})")),
                 Error);
    EXPECT_THROW(schedule_from_json(nlohmann::json::parse(R"({"dim": 2, "breakpoints": [[1, [0, 0]], [0, [0, 0]]]})")),
                 Error);
    EXPECT_THROW(schedule_from_json(nlohmann::json::parse(R"({"breakpoints": []})")), Error);
}

TEST(PhaseSchedule, Reparameterized) {
    const auto base = builtin_schedule(3);
    const Reparameterized sq(base, [](double t) { return t * t; });
    EXPECT_EQ(sq.dim(), 3);
    expect_phases(sq(0.5), base.eval(0.25));
    EXPECT_TRUE(check_su(sq, 101));
}
