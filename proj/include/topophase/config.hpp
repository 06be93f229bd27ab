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

// Run configuration files (schema_version 1):
//
//   {
//     "schema_version": 1,
//     "dim": 3,                      // or "dims": [2, 3, 4]
//     "schedule": "builtin",         // or {"file": ...} or an inline schedule
//     "state": "mes",                // or {"file": ...} or an inline state
//     "theta_deg": {"start": 0, "stop": 180, "step": 5},   // or a list
//     "t_values": [0, 0.5, 1],
//     "mode": "sampled",             // or "exact"
//     "counts_per_point": 1000,
//     "contrast": 0.35,
//     "seed": 42,
//     "out_dir": "campaign-out"      // campaigns only
//   }
//
// Every key except schema_version is optional. Relative file references are
// resolved against the config file's directory.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "topophase/error.hpp"
#include "topophase/phase_schedule.hpp"
#include "topophase/qudit_state.hpp"
#include "topophase/sagnac.hpp"
#include "topophase/scan_io.hpp"

namespace topophase {

inline constexpr int kConfigSchemaVersion = 1;

struct RunSettings {
    std::vector<int> dims{3};
    nlohmann::json schedule = "builtin";
    nlohmann::json state = "mes";
    std::vector<double> theta_grid = default_theta_grid();
    std::vector<double> t_values{0.0, 0.5, 1.0};
    ScanMode mode = ScanMode::Sampled;
    int counts_per_point = kDefaultCountsPerPoint;
    double contrast = kDefaultContrast;
    std::uint64_t seed = kDefaultSeed;
    std::string out_dir;
    std::filesystem::path base_dir = ".";
};

namespace detail {

inline nlohmann::json load_json_file(const std::filesystem::path& path) {
    try {
        return nlohmann::json::parse(read_text(path));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, "cannot parse " + path.string() + ": " + e.what());
    }
}

inline nlohmann::json resolve_ref(const nlohmann::json& j, const std::filesystem::path& base) {
    if (j.is_object() && j.contains("file")) {
        std::filesystem::path p = j.at("file").get<std::string>();
        if (p.is_relative()) p = base / p;
        return load_json_file(p);
    }
    return j;
}

}  // namespace detail

inline RunSettings settings_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = ".") {
    RunSettings s;
    s.base_dir = base_dir;
    try {
        if (!j.is_object()) throw Error(ErrorKind::Parse, "config must be a JSON object");
        const int version = j.at("schema_version").get<int>();
        if (version != kConfigSchemaVersion) {
            throw Error(ErrorKind::Parse, "unsupported schema_version " + std::to_string(version));
        }
        if (j.contains("dims")) s.dims = j.at("dims").get<std::vector<int>>();
        else if (j.contains("dim")) s.dims = {j.at("dim").get<int>()};
        if (s.dims.empty()) throw Error(ErrorKind::InvalidArgument, "dims list is empty");
        if (j.contains("schedule")) s.schedule = j.at("schedule");
        if (j.contains("state")) s.state = j.at("state");
        if (j.contains("theta_deg")) {
            const auto& th = j.at("theta_deg");
            if (th.is_array()) {
                s.theta_grid.clear();
                for (const auto& v : th) s.theta_grid.push_back(deg_to_rad(v.get<double>()));
            } else {
                s.theta_grid = theta_grid_deg(th.value("start", 0.0), th.value("stop", 180.0), th.value("step", 5.0));
            }
        }
        if (j.contains("t_values")) s.t_values = j.at("t_values").get<std::vector<double>>();
        if (j.contains("mode")) s.mode = scan_mode_from_string(j.at("mode").get<std::string>());
        s.counts_per_point = j.value("counts_per_point", s.counts_per_point);
        s.contrast = j.value("contrast", s.contrast);
        s.seed = j.value("seed", s.seed);
        s.out_dir = j.value("out_dir", s.out_dir);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("malformed config: ") + e.what());
    }
    return s;
}

inline RunSettings load_settings(const std::filesystem::path& path) {
    return settings_from_json(detail::load_json_file(path), path.parent_path().empty() ? "." : path.parent_path());
}

inline ExperimentConfig make_experiment(const RunSettings& s, int d) {
    const nlohmann::json sched = detail::resolve_ref(s.schedule, s.base_dir);
    if (sched.is_string() && sched.get<std::string>() != "builtin") {
        throw Error(ErrorKind::Parse, "schedule must be \"builtin\", a file reference or an inline schedule");
    }
    PhaseSchedule schedule = sched.is_string() ? builtin_schedule(d) : schedule_from_json(sched);

    const nlohmann::json st = detail::resolve_ref(s.state, s.base_dir);
    if (st.is_string() && st.get<std::string>() != "mes") {
        throw Error(ErrorKind::Parse, "state must be \"mes\", a file reference or an inline state");
    }
    BipartiteQuditState state = st.is_string() ? make_antisymmetric_mes(d) : state_from_json(st);

    ExperimentConfig cfg{d,
                         std::move(schedule),
                         std::move(state),
                         s.theta_grid,
                         s.t_values,
                         s.counts_per_point,
                         s.contrast,
                         s.seed,
                         s.mode};
    cfg.validate();
    return cfg;
}

}  // namespace topophase
