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

// A qutrit schedule with twice the built-in phase excursion (n = 2), loaded
// from JSON. The fringe moves by 2 * 120 deg.

#include <iostream>

#include <fmt/format.h>
#include <json.hpp>

#include "topophase/fringe_fit.hpp"
#include "topophase/kinematic.hpp"
#include "topophase/sagnac.hpp"

int main() {
    using namespace topophase;
    // [t, [phases in degrees]]; each row sums to zero
    const auto j = nlohmann::json::parse(R"({
      "dim": 3,
      "breakpoints": [
        [0.0, [0, 0, 0]],
        [0.5, [240, -240, 0]],
        [1.0, [240, -480, 240]]
      ]
    })");
    auto cfg = ExperimentConfig::defaults(3);
    cfg.schedule = schedule_from_json(j);
    cfg.mode = ScanMode::Exact;

    const FitResult ref = fit_fringe(generate_scan(cfg, 0.0));
    const FitResult op = fit_fringe(generate_scan(cfg, 1.0));
    const KinematicPhases k = kinematic_phase(cfg.state, cfg.schedule, 10000);
    fmt::print("fringe shift      {:.6f} deg\n", rad_to_deg(phase_shift(ref, op).shift));
    fmt::print("geometric phase   {:.6f} deg\n", rad_to_deg(wrap_positive(k.geometric)));
    fmt::print("2 * 360 / 3 mod 360 = {:.6f} deg\n", rad_to_deg(predict_fractional(3, 2)));
    return 0;
}
