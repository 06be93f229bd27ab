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

// `topophase` command-line front end. run_cli() is the whole program; the
// binary in tools/ only forwards argv and the standard streams.
//
// Exit status: 0 success, 1 analysis failure, 2 usage or configuration error.

#pragma once

#include <cstdlib>
#include <filesystem>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "topophase/config.hpp"
#include "topophase/fringe_fit.hpp"
#include "topophase/kinematic.hpp"
#include "topophase/sagnac.hpp"
#include "topophase/scan_io.hpp"
#include "topophase/svg.hpp"
#include "topophase/verify.hpp"

namespace topophase::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAnalysis = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kOutDirEnv = "TOPOPHASE_OUT_DIR";

inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::LowVisibility:
        case ErrorKind::DegenerateOverlap:
        case ErrorKind::TooFewPoints:
            return kExitAnalysis;
        default:
            return kExitUsage;
    }
}

inline std::filesystem::path default_out_dir(const std::string& fallback) {
    if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
    return fallback;
}

inline std::string t_label(double t) { return fmt::format("{:.3f}", t); }

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string config;
    std::optional<int> dim;
    std::optional<double> t;
    bool exact = false;
    bool sampled = false;
    std::optional<std::uint64_t> seed;
    std::optional<double> contrast;
    std::optional<int> counts;
    std::string schedule;
    std::string state;
    std::string out;
};

inline int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    RunSettings s = a.config.empty() ? RunSettings{} : load_settings(a.config);
    if (a.dim) s.dims = {*a.dim};
    if (s.dims.size() != 1) throw Error(ErrorKind::InvalidArgument, "simulate needs a single dimension; pass --d");
    if (a.t) s.t_values = {*a.t};
    if (a.exact) s.mode = ScanMode::Exact;
    if (a.sampled) s.mode = ScanMode::Sampled;
    if (a.seed) s.seed = *a.seed;
    if (a.contrast) s.contrast = *a.contrast;
    if (a.counts) s.counts_per_point = *a.counts;
    if (!a.schedule.empty()) s.schedule = {{"file", std::filesystem::absolute(a.schedule).string()}};
    if (!a.state.empty()) s.state = {{"file", std::filesystem::absolute(a.state).string()}};
    if (s.t_values.empty()) throw Error(ErrorKind::InvalidArgument, "no t values to simulate");

    const ExperimentConfig cfg = make_experiment(s, s.dims.front());
    const std::filesystem::path dir = a.out.empty() ? default_out_dir(".") : std::filesystem::path(a.out);
    std::filesystem::create_directories(dir);
    for (double t : cfg.t_values) {
        const FringeScan scan = generate_scan(cfg, t);
        const auto path = dir / fmt::format("scan_d{}_t{}.csv", cfg.dim, t_label(t));
        write_scan(path, scan, metadata_for(cfg, t));
        out << path.string() << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------- fit

struct FitArgs {
    std::string scan;
    std::string ref;
    std::string out;
};

inline int cmd_fit(const FitArgs& a, std::ostream& out) {
    const FringeScan scan = read_scan(a.scan);
    const FitResult fit = fit_fringe(scan);
    nlohmann::json report;
    report["scan"] = a.scan;
    report["fit"] = to_json(fit);
    report["visibility_estimate"] = visibility_estimate(scan);
    if (!a.ref.empty()) {
        const FringeScan ref_scan = read_scan(a.ref);
        const FitResult ref_fit = fit_fringe(ref_scan);
        report["reference"] = {{"scan", a.ref}, {"fit", to_json(ref_fit)},
                               {"visibility_estimate", visibility_estimate(ref_scan)}};
        report["phase_shift"] = to_json(phase_shift(ref_fit, fit));
    }
    const std::string text = report.dump(2) + "\n";
    if (a.out.empty()) out << text;
    else write_text(a.out, text);
    return kExitOk;
}

// ---------------------------------------------------------------- campaign

struct CampaignArgs {
    std::string config;
    std::string out;
};

struct DimensionRun {
    ExperimentConfig cfg;
    std::vector<FringeScan> scans;
    std::vector<std::optional<FitResult>> fits;
    PhaseShift shift{};
    KinematicPhases kinematic;
};

inline DimensionRun run_dimension(const RunSettings& s, int d) {
    DimensionRun run{make_experiment(s, d), {}, {}, {}, {}};
    std::optional<FitResult> ref, op;
    for (double t : run.cfg.t_values) {
        run.scans.push_back(generate_scan(run.cfg, t));
        std::optional<FitResult> fit;
        try {
            fit = fit_fringe(run.scans.back());
        } catch (const Error&) {
            if (t == 0.0 || t == 1.0) throw;
        }
        if (t == 0.0) ref = fit;
        if (t == 1.0) op = fit;
        run.fits.push_back(fit);
    }
    run.shift = phase_shift(*ref, *op);
    run.kinematic = kinematic_phase(run.cfg.state, run.cfg.schedule, 10000);
    return run;
}

/// Writes files in order and removes everything it created if any step fails.
class OutputTransaction {
public:
    explicit OutputTransaction(std::filesystem::path root) : root_(std::move(root)) {
        std::filesystem::path p;
        for (const auto& part : root_) {
            p /= part;
            if (!std::filesystem::exists(p)) {
                std::filesystem::create_directory(p);
                created_.push_back(p);
            }
        }
    }
    ~OutputTransaction() {
        if (committed_) return;
        std::error_code ec;
        for (auto it = created_.rbegin(); it != created_.rend(); ++it) std::filesystem::remove(*it, ec);
    }
    OutputTransaction(const OutputTransaction&) = delete;
    OutputTransaction& operator=(const OutputTransaction&) = delete;

    void mkdir(const std::filesystem::path& rel) {
        std::filesystem::path p = root_;
        for (const auto& part : rel) {
            p /= part;
            if (!std::filesystem::exists(p)) {
                std::filesystem::create_directory(p);
                created_.push_back(p);
            }
        }
    }
    void write(const std::filesystem::path& rel, const std::string& text) {
        const auto p = root_ / rel;
        const bool existed = std::filesystem::exists(p);
        write_text(p, text);
        if (!existed) created_.push_back(p);
    }
    void commit() { committed_ = true; }

private:
    std::filesystem::path root_;
    std::vector<std::filesystem::path> created_;
    bool committed_ = false;
};

inline int cmd_campaign(const CampaignArgs& a, std::ostream& out) {
    const RunSettings s = load_settings(a.config);
    if (s.t_values.empty()) throw Error(ErrorKind::InvalidArgument, "campaign t_values is empty");
    bool has_ref = false, has_op = false;
    for (double t : s.t_values) {
        has_ref = has_ref || t == 0.0;
        has_op = has_op || t == 1.0;
    }
    if (!has_ref || !has_op) throw Error(ErrorKind::InvalidArgument, "campaign t_values must include 0 and 1");

    std::filesystem::path root = !a.out.empty() ? std::filesystem::path(a.out)
                                 : !s.out_dir.empty()
                                     ? (std::filesystem::path(s.out_dir).is_relative() ? s.base_dir / s.out_dir
                                                                                      : std::filesystem::path(s.out_dir))
                                     : default_out_dir("campaign-out");

    // Dimensions are independent; compute them concurrently, write afterwards.
    std::vector<std::future<DimensionRun>> jobs;
    for (int d : s.dims) jobs.push_back(std::async(std::launch::async, run_dimension, std::cref(s), d));
    std::vector<DimensionRun> runs;
    for (auto& j : jobs) runs.push_back(j.get());

    OutputTransaction tx(root);

    nlohmann::json entries = nlohmann::json::array();
    std::vector<FringePanel> panels;
    std::vector<ShiftPoint> shifts;
    for (const auto& run : runs) {
        const int d = run.cfg.dim;
        const std::filesystem::path sub = fmt::format("d{}", d);
        tx.mkdir(sub);
        FringePanel panel{d, {}};
        for (std::size_t k = 0; k < run.scans.size(); ++k) {
            const double t = run.cfg.t_values[k];
            const auto stem = sub / fmt::format("scan_t{}", t_label(t));
            tx.write(stem.string() + ".csv", scan_csv(run.scans[k]));
            tx.write(stem.string() + ".json", to_json(metadata_for(run.cfg, t)).dump(2) + "\n");
            nlohmann::json fit_json = run.fits[k] ? to_json(*run.fits[k]) : nlohmann::json(nullptr);
            tx.write(sub / fmt::format("fit_t{}.json", t_label(t)), fit_json.dump(2) + "\n");
            panel.series.push_back({t, run.scans[k], run.fits[k]});
        }
        panels.push_back(std::move(panel));
        const double theory = rad_to_deg(predict_fractional(d, 1));
        shifts.push_back({d, rad_to_deg(run.shift.shift), rad_to_deg(run.shift.sigma), theory});
        entries.push_back({{"d", d},
                           {"shift_deg", rad_to_deg(run.shift.shift)},
                           {"sigma_deg", rad_to_deg(run.shift.sigma)},
                           {"theory_deg", theory},
                           {"kinematic_geometric_deg", rad_to_deg(wrap_positive(run.kinematic.geometric))},
                           {"visibility_ref", run.fits.front() ? run.fits.front()->visibility : 0.0}});
    }
    tx.write("campaign.svg", campaign_svg(panels, shifts));
    nlohmann::json summary = {{"mode", to_string(s.mode)}, {"seed", s.seed}, {"contrast", s.contrast},
                              {"counts_per_point", s.counts_per_point}, {"entries", std::move(entries)}};
    tx.write("summary.json", summary.dump(2) + "\n");
    tx.commit();

    for (const auto& sp : shifts) {
        out << fmt::format("d={}  shift = {:.3f} +/- {:.3f} deg  (theory {:.1f})\n", sp.dim, sp.shift_deg,
                           sp.sigma_deg, sp.theory_deg);
    }
    out << "wrote " << (root / "summary.json").string() << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    int trials = 200;
    std::uint64_t seed = 0;
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out, const SagnacOptics& optics = {}) {
    if (a.trials < 1) throw Error(ErrorKind::InvalidArgument, "--trials must be at least 1");
    const VerifyReport report = run_verification(a.trials, a.seed, optics);
    for (const auto& c : report.checks) {
        out << (c.passed ? "PASS  " : "FAIL  ") << c.name << '\n';
        if (!c.passed) {
            out << "      counterexample: " << c.counterexample << '\n';
            break;
        }
    }
    return report.passed() ? kExitOk : kExitAnalysis;
}

// ---------------------------------------------------------------- entry point

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulate and analyse two-photon Sagnac fringe shifts of entangled qudits", "topophase"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Generate fringe scans (CSV + JSON sidecar)");
    simulate->add_option("config,--config", sim.config, "Run configuration JSON")->check(CLI::ExistingFile);
    simulate->add_option("--d", sim.dim, "Qudit dimension");
    simulate->add_option("--t", sim.t, "Schedule parameter t in [0, 1]");
    auto* exact_flag = simulate->add_flag("--exact", sim.exact, "Write exact probabilities");
    simulate->add_flag("--sampled", sim.sampled, "Write Poisson-sampled counts")->excludes(exact_flag);
    simulate->add_option("--seed", sim.seed, "RNG seed");
    simulate->add_option("--contrast", sim.contrast, "Fringe contrast factor in [0, 1]");
    simulate->add_option("--counts", sim.counts, "Mean coincidences per theta point");
    simulate->add_option("--schedule", sim.schedule, "Custom schedule JSON")->check(CLI::ExistingFile);
    simulate->add_option("--state", sim.state, "Two-qudit state JSON")->check(CLI::ExistingFile);
    simulate->add_option("--out", sim.out, fmt::format("Output directory (default ${} or .)", kOutDirEnv));

    FitArgs fit;
    auto* fit_cmd = app.add_subcommand("fit", "Fit fringe scans and report the phase shift");
    fit_cmd->add_option("scan", fit.scan, "Scan CSV")->required()->check(CLI::ExistingFile);
    fit_cmd->add_option("--ref", fit.ref, "Reference scan CSV")->check(CLI::ExistingFile);
    fit_cmd->add_option("--out", fit.out, "Write the JSON report here instead of stdout");

    CampaignArgs camp;
    auto* campaign = app.add_subcommand("campaign", "Run scans, fits, summary and plots for several dimensions");
    campaign->add_option("config", camp.config, "Campaign JSON")->required()->check(CLI::ExistingFile);
    campaign->add_option("--out", camp.out, "Output directory");

    VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "Run the randomized self-check suite");
    verify->add_option("--trials", ver.trials, "Random trials per check");
    verify->add_option("--seed", ver.seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*simulate) return cmd_simulate(sim, out);
        if (*fit_cmd) return cmd_fit(fit, out);
        if (*campaign) return cmd_campaign(camp, out);
        if (*verify) return cmd_verify(ver, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace topophase::cli
