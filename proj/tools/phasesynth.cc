// Copyright 2026 The phasesynth Authors
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

// phasesynth: inspect states, simulate projection-synthesis sweeps, run self-checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "phasesynth/io.h"
#include "phasesynth/validate.h"
#include "phasesynth/version.h"

namespace fs = std::filesystem;
using namespace phasesynth;

namespace {

constexpr int kAnalyticPoints = 720;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int report_error(const std::string& kind, const std::string& path, const std::string& message,
                 bool as_json, int code) {
    if (as_json) {
        Json err = {{"error", {{"kind", kind}, {"message", message}}}};
        if (!path.empty()) {
            err["error"]["path"] = path;
        }
        std::cerr << err.dump() << "\n";
    } else if (path.empty()) {
        std::cerr << "phasesynth: " << kind << ": " << message << "\n";
    } else {
        std::cerr << "phasesynth: " << kind << " at " << path << ": " << message << "\n";
    }
    return code;
}

// ---- states ----------------------------------------------------------------

struct StatesOptions {
    int binomial = -1;
    double coherent_mean = -1.0;
    int squeezed_approx = -1;
    std::string regime = "weak_field";
    std::string spec;
    bool json = false;
};

Json state_summary(const FockVector& state) {
    Json amps = Json::array();
    for (int n = 0; n <= state.cutoff(); ++n) {
        amps.push_back({{"n", n},
                        {"re", state[n].real()},
                        {"im", state[n].imag()},
                        {"prob", std::norm(state[n])}});
    }
    const auto grid = uniform_theta_grid(kAnalyticPoints);
    const auto dist = canonical_distribution(SignalState(state), grid);
    double peak = 0.0;
    double peak_theta = 0.0;
    for (const auto& p : dist.points) {
        if (p.value > peak) {
            peak = p.value;
            peak_theta = p.theta;
        }
    }
    return {{"cutoff", state.cutoff()},
            {"amplitudes", amps},
            {"mean_photon_number", state.mean_photon_number()},
            {"canonical",
             {{"density_at_zero", canonical_density(state, 0.0)},
              {"peak_density", peak},
              {"peak_theta", peak_theta},
              {"integral", dist.periodic_trapezoid()}}}};
}

Json ratio_table(const FockVector& state, int order) {
    const FockVector binomial = binomial_state(order);
    Json rows = Json::array();
    for (int n = 0; n <= order; ++n) {
        rows.push_back({{"n", n},
                        {"ratio", std::abs(state[n] / state[order])},
                        {"binomial_ratio", std::abs(binomial[n] / binomial[order])}});
    }
    return rows;
}

void print_states_text(const Json& out) {
    std::printf("n   re                   im                   prob\n");
    for (const auto& a : out["amplitudes"]) {
        std::printf("%-3d % .15f % .15f %.15f\n", a["n"].get<int>(), a["re"].get<double>(),
                    a["im"].get<double>(), a["prob"].get<double>());
    }
    std::printf("mean photon number: %.12g\n", out["mean_photon_number"].get<double>());
    const auto& c = out["canonical"];
    std::printf("canonical P(0): %.12g /rad, peak %.12g /rad at theta %.6f, integral %.12f\n",
                c["density_at_zero"].get<double>(), c["peak_density"].get<double>(),
                c["peak_theta"].get<double>(), c["integral"].get<double>());
    if (out.contains("ratios")) {
        std::printf("squeezed t = %.6f, alpha = %.12f\n", out["t"].get<double>(),
                    out["alpha"].get<double>());
        std::printf("n   |c_n/c_N|            binomial\n");
        for (const auto& r : out["ratios"]) {
            std::printf("%-3d %.12f       %.12f\n", r["n"].get<int>(), r["ratio"].get<double>(),
                        r["binomial_ratio"].get<double>());
        }
        std::printf("quadrature variance / vacuum: %.12f (%.4f dB)\n",
                    out["quadrature_variance_ratio"].get<double>(),
                    10.0 * std::log10(out["quadrature_variance_ratio"].get<double>()));
    }
}

int cmd_states(const StatesOptions& opt) {
    const int chosen = (opt.binomial >= 0) + (opt.coherent_mean >= 0.0) +
                       (opt.squeezed_approx >= 0) + !opt.spec.empty();
    if (chosen != 1) {
        return report_error("usage error", "",
                            "give exactly one of --binomial, --coherent-mean, --squeezed-approx, --spec",
                            opt.json, kExitConfig);
    }
    try {
        Json spec;
        if (opt.binomial >= 0) {
            spec = {{"kind", "binomial"}, {"N", opt.binomial}};
        } else if (opt.coherent_mean >= 0.0) {
            spec = {{"kind", "coherent"}, {"mean_photon_number", opt.coherent_mean}};
        } else if (opt.squeezed_approx >= 0) {
            spec = {{"kind", "squeezed_approx"}, {"N", opt.squeezed_approx}, {"regime", opt.regime}};
        } else {
            spec = Json::parse(opt.spec);
        }
        const FockVector state = parse_pure_state_spec(spec, "spec");
        Json out = state_summary(state);
        if (opt.squeezed_approx >= 0) {
            const SqueezedParams params = opt.regime == "weak_field"
                                              ? weak_field_reference_params()
                                              : early_terms_reference_params(opt.squeezed_approx);
            out["t"] = std::abs(params.t());
            out["alpha"] = params.alpha.real();
            out["ratios"] = ratio_table(state, opt.squeezed_approx);
            out["quadrature_variance_ratio"] =
                min_quadrature_variance_ratio(squeezed_state(params, 60));
        }
        if (opt.json) {
            std::cout << out.dump(2) << "\n";
        } else {
            print_states_text(out);
        }
    } catch (const ConfigError& e) {
        return report_error("invalid state spec", e.path(), e.what(), opt.json, kExitConfig);
    } catch (const Json::exception& e) {
        return report_error("invalid state spec", "spec", e.what(), opt.json, kExitConfig);
    } catch (const std::exception& e) {
        return report_error("invalid state spec", "", e.what(), opt.json, kExitConfig);
    }
    return 0;
}

// ---- simulate --------------------------------------------------------------

struct SimulateOptions {
    std::string config;
    std::string mode = "exact";
    std::string out = ".";
    std::optional<uint64_t> seed;
    bool json = false;
};

void write_csv_file(const fs::path& path, const PhaseDistribution& dist) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    write_csv(f, dist);
    if (!f) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

int cmd_simulate(const SimulateOptions& opt) {
    Json doc;
    {
        std::ifstream f(opt.config);
        if (!f) {
            return report_error("config error", "config", "cannot read " + opt.config, opt.json,
                                kExitConfig);
        }
        try {
            doc = Json::parse(f);
        } catch (const Json::exception& e) {
            return report_error("config error", "config", e.what(), opt.json, kExitConfig);
        }
    }
    if (opt.seed) {
        doc["seed"] = *opt.seed;
    }
    ExperimentConfig config;
    try {
        config = parse_experiment_config(doc);
    } catch (const ConfigError& e) {
        return report_error("config error", e.path(), e.what(), opt.json, kExitConfig);
    }

    SweepResult result;
    try {
        result = opt.mode == "mc" ? run_monte_carlo(config) : run_exact(config);
    } catch (const std::exception& e) {
        return report_error("numerical guard", "", e.what(), opt.json, kExitRuntime);
    }
    const auto& diag = result.diagnostics;
    if (diag.inversion_cancellation_warning) {
        std::cerr << "phasesynth: warning: efficiency inversion cancellation ratio "
                  << diag.inversion_cancellation_ratio << "\n";
    }
    if (diag.nonuniform_efficiency) {
        std::cerr << "phasesynth: warning: unequal detector efficiencies\n";
    }

    const fs::path out_dir(opt.out);
    const fs::path points_path = out_dir / "points.csv";
    const fs::path analytic_path = out_dir / "analytic.csv";
    const fs::path summary_path = out_dir / "summary.json";
    Json summary;
    try {
        fs::create_directories(out_dir);
        write_csv_file(points_path, result.points);
        write_csv_file(analytic_path,
                       canonical_distribution(config.signal, uniform_theta_grid(kAnalyticPoints)));

        Json events = Json::array();
        for (size_t k = 0; k < result.raw_event_probs.size(); ++k) {
            events.push_back({{"shift", result.setting_shifts[k]}, {"probs", result.raw_event_probs[k]}});
        }
        summary = {
            {"manifest",
             {{"tool", "phasesynth"},
              {"version", kVersion},
              {"timestamp", utc_timestamp()},
              {"seed", config.seed},
              {"mode", opt.mode},
              {"config_path", opt.config},
              {"config", doc},
              {"outputs", {{"points", points_path.string()}, {"analytic", analytic_path.string()}}}}},
            {"source", to_string(result.points.source)},
            {"point_count", result.points.points.size()},
            {"minimum_point_count", minimum_point_count(config.order)},
            {"desired_event_rate", result.desired_event_rate},
            {"settings", events},
            {"deviation_from_canonical", metrics_to_json(compare_to_canonical(result, config.signal))},
            {"diagnostics", diagnostics_to_json(diag)},
        };
        std::ofstream f(summary_path);
        f << summary.dump(2) << "\n";
        if (!f) {
            throw std::runtime_error("write failed for " + summary_path.string());
        }
    } catch (const std::exception& e) {
        return report_error("output error", "", e.what(), opt.json, kExitRuntime);
    }

    if (opt.json) {
        std::cout << summary.dump(2) << "\n";
    } else {
        const auto& m = summary["deviation_from_canonical"];
        std::printf("%s: %zu points, desired event rate %.6g\n", opt.mode.c_str(),
                    result.points.points.size(), result.desired_event_rate);
        std::printf("deviation from canonical: max abs %.6g /rad, rms %.6g /rad, max rel %.6g\n",
                    m["max_abs_deviation"].get<double>(), m["rms_deviation"].get<double>(),
                    m["max_rel_deviation"].get<double>());
        std::printf("wrote %s, %s, %s\n", points_path.c_str(), analytic_path.c_str(),
                    summary_path.c_str());
    }
    return 0;
}

// ---- validate --------------------------------------------------------------

int cmd_validate(bool as_json, const std::string& fault_name) {
    Fault fault = Fault::kNone;
    if (!fault_name.empty()) {
        const auto parsed = parse_fault(fault_name);
        if (!parsed) {
            return report_error("usage error", "--inject-fault", "unknown fault '" + fault_name + "'",
                                as_json, kExitConfig);
        }
        fault = *parsed;
    }
    const ValidationReport report = run_validation(fault);
    if (as_json) {
        std::cout << report_to_json(report).dump(2) << "\n";
    } else {
        for (const auto& c : report.checks) {
            std::printf("%-4s %-22s residual %.3e (tolerance %.0e)  %s\n", c.passed ? "PASS" : "FAIL",
                        c.name.c_str(), c.residual, c.tolerance, c.detail.c_str());
        }
        std::printf("%s\n", report.passed() ? "all checks passed" : "some checks failed");
    }
    return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Projection-synthesis phase measurement simulator"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    StatesOptions states;
    auto* states_cmd = app.add_subcommand("states", "Print a single-mode state and its phase summary");
    states_cmd->add_option("--binomial", states.binomial, "Binomial state of order N")->check(CLI::NonNegativeNumber);
    states_cmd->add_option("--coherent-mean", states.coherent_mean, "Coherent state with this mean photon number")
        ->check(CLI::NonNegativeNumber);
    states_cmd->add_option("--squeezed-approx", states.squeezed_approx,
                           "Squeezed approximation to binomial(N), with ratio table")
        ->check(CLI::NonNegativeNumber);
    states_cmd->add_option("--regime", states.regime, "Matching regime for --squeezed-approx")
        ->check(CLI::IsMember({"weak_field", "early_terms"}));
    states_cmd->add_option("--spec", states.spec, "State spec as a JSON string");
    states_cmd->add_flag("--json", states.json, "Machine-readable output");

    SimulateOptions sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Run a reference-phase sweep");
    sim_cmd->add_option("--config", sim.config, "Experiment config (JSON)")->required();
    sim_cmd->add_option("--mode", sim.mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
    sim_cmd->add_option("--out", sim.out, "Output directory");
    sim_cmd->add_option("--seed", sim.seed, "Override the config seed");
    sim_cmd->add_flag("--json", sim.json, "Print summary.json to stdout");

    bool validate_json = false;
    std::string fault;
    auto* val_cmd = app.add_subcommand("validate", "Run the built-in invariant checks");
    val_cmd->add_flag("--json", validate_json, "Machine-readable report");
    val_cmd->add_option("--inject-fault", fault, "Corrupt one check (test hook)");

    CLI11_PARSE(app, argc, argv);

    if (states_cmd->parsed()) {
        return cmd_states(states);
    }
    if (sim_cmd->parsed()) {
        return cmd_simulate(sim);
    }
    return cmd_validate(validate_json, fault);
}
