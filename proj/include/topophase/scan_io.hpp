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

// Scan files: CSV with header "theta_deg,counts" or "theta_deg,probability",
// plus a sidecar JSON {dim, t, seed, contrast, counts_per_point, mode}
// sharing the CSV's stem.

#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <fmt/format.h>
#include <json.hpp>

#include "topophase/angles.hpp"
#include "topophase/error.hpp"
#include "topophase/sagnac.hpp"

namespace topophase {

struct ScanMetadata {
    int dim = 0;
    double t = 0.0;
    std::uint64_t seed = 0;
    double contrast = 1.0;
    int counts_per_point = 0;
    ScanMode mode = ScanMode::Exact;
};

inline ScanMetadata metadata_for(const ExperimentConfig& cfg, double t) {
    return {cfg.dim, t, cfg.rng_seed, cfg.contrast, cfg.counts_per_point, cfg.mode};
}

inline nlohmann::json to_json(const ScanMetadata& m) {
    return {{"dim", m.dim},           {"t", m.t},
            {"seed", m.seed},         {"contrast", m.contrast},
            {"counts_per_point", m.counts_per_point}, {"mode", to_string(m.mode)}};
}

inline ScanMetadata metadata_from_json(const nlohmann::json& j) {
    try {
        ScanMetadata m;
        m.dim = j.at("dim").get<int>();
        m.t = j.at("t").get<double>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.contrast = j.at("contrast").get<double>();
        m.counts_per_point = j.at("counts_per_point").get<int>();
        m.mode = scan_mode_from_string(j.value("mode", std::string("exact")));
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("malformed scan metadata: ") + e.what());
    }
}

inline std::string scan_csv(const FringeScan& scan) {
    std::string out = scan.mode == ScanMode::Exact ? "theta_deg,probability\n" : "theta_deg,counts\n";
    for (const auto& p : scan.points) {
        if (scan.mode == ScanMode::Exact) {
            out += fmt::format("{:.10g},{:.17g}\n", rad_to_deg(p.theta), p.value);
        } else {
            out += fmt::format("{:.10g},{}\n", rad_to_deg(p.theta), static_cast<long long>(std::llround(p.value)));
        }
    }
    return out;
}

inline std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
    auto p = csv;
    return p.replace_extension(".json");
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_scan(const std::filesystem::path& csv, const FringeScan& scan, const ScanMetadata& meta) {
    write_text(csv, scan_csv(scan));
    write_text(sidecar_path(csv), to_json(meta).dump(2) + "\n");
}

inline FringeScan parse_scan_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "scan CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    FringeScan scan;
    if (line == "theta_deg,probability") scan.mode = ScanMode::Exact;
    else if (line == "theta_deg,counts") scan.mode = ScanMode::Sampled;
    else throw Error(ErrorKind::Parse, "unrecognized scan CSV header: " + line);

    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::Parse, fmt::format("line {}: expected two columns", lineno));
        try {
            std::size_t used = 0;
            const std::string a = line.substr(0, comma);
            const std::string b = line.substr(comma + 1);
            const double theta_deg = std::stod(a, &used);
            if (used != a.size()) throw std::invalid_argument("trailing characters");
            const double value = std::stod(b, &used);
            if (used != b.size()) throw std::invalid_argument("trailing characters");
            if (!std::isfinite(theta_deg) || !std::isfinite(value)) throw std::invalid_argument("non-finite");
            scan.points.push_back({deg_to_rad(theta_deg), value});
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::Parse, fmt::format("line {}: bad number in \"{}\"", lineno, line));
        }
    }
    scan.validate();
    return scan;
}

/// Reads a scan CSV and, when present, its sidecar to recover t.
inline FringeScan read_scan(const std::filesystem::path& csv) {
    FringeScan scan = parse_scan_csv(read_text(csv));
    const auto side = sidecar_path(csv);
    if (std::filesystem::exists(side)) {
        try {
            scan.t = metadata_from_json(nlohmann::json::parse(read_text(side))).t;
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::Parse, "cannot parse " + side.string() + ": " + e.what());
        }
    }
    return scan;
}

}  // namespace topophase
