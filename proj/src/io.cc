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

#include "phasesynth/io.h"

#include <cmath>

namespace phasesynth {

namespace {

const Json& require(const Json& obj, const char* key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ConfigError(path + "." + key, "required field is missing");
    }
    return obj.at(key);
}

double as_number(const Json& v, const std::string& path) {
    if (!v.is_number()) {
        throw ConfigError(path, "expected a number");
    }
    return v.get<double>();
}

int as_int(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) {
        throw ConfigError(path, "expected an integer");
    }
    return v.get<int>();
}

Complex as_complex(const Json& v, const std::string& path) {
    if (v.is_number()) {
        return v.get<double>();
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw ConfigError(path, "expected a number or [re, im] pair");
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

// Wraps library exceptions so the message carries the field path.
template <typename Fn>
auto at_path(const std::string& path, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(path, e.what());
    }
}

FockVector parse_pure_kind(const Json& spec, const std::string& path) {
    const std::string kind = require(spec, "kind", path).get<std::string>();
    const bool has_cutoff = spec.contains("cutoff");
    const int cutoff = has_cutoff ? as_int(spec.at("cutoff"), path + ".cutoff") : -1;
    if (kind == "coherent") {
        Complex alpha;
        if (spec.contains("alpha")) {
            alpha = as_complex(spec.at("alpha"), path + ".alpha");
        } else {
            const double mean = as_number(require(spec, "mean_photon_number", path),
                                          path + ".mean_photon_number");
            if (mean < 0.0) {
                throw ConfigError(path + ".mean_photon_number", "must be non-negative");
            }
            alpha = std::sqrt(mean);
        }
        return at_path(path, [&] {
            return coherent_state(alpha, has_cutoff ? cutoff : coherent_cutoff(std::norm(alpha)));
        });
    }
    if (kind == "squeezed" || kind == "squeezed_approx") {
        SqueezedParams params;
        if (kind == "squeezed") {
            const Complex alpha = as_complex(require(spec, "alpha", path), path + ".alpha");
            if (spec.contains("t")) {
                const Complex t = as_complex(spec.at("t"), path + ".t");
                params = at_path(path + ".t", [&] { return SqueezedParams::from_t(alpha, t); });
            } else {
                params.alpha = alpha;
                params.zeta_mag = as_number(require(spec, "zeta", path), path + ".zeta");
                params.phi = spec.contains("phi") ? as_number(spec.at("phi"), path + ".phi") : 0.0;
                if (params.zeta_mag < 0.0) {
                    throw ConfigError(path + ".zeta", "must be non-negative");
                }
            }
        } else {
            const int n = spec.contains("N") ? as_int(spec.at("N"), path + ".N") : 3;
            const std::string regime = spec.value("regime", std::string("weak_field"));
            if (regime == "weak_field") {
                if (n != 3) {
                    throw ConfigError(path + ".N", "weak_field matching is solved for N = 3 only");
                }
                params = weak_field_reference_params();
            } else if (regime == "early_terms") {
                params = at_path(path + ".N", [&] { return early_terms_reference_params(n); });
            } else {
                throw ConfigError(path + ".regime", "expected weak_field or early_terms");
            }
        }
        return at_path(path, [&] {
            return squeezed_state(params, has_cutoff ? cutoff : squeezed_cutoff(params));
        });
    }
    if (kind == "binomial") {
        const int n = as_int(require(spec, "N", path), path + ".N");
        auto state = at_path(path, [&] { return binomial_state(n); });
        return has_cutoff ? at_path(path, [&] { return state.with_cutoff(cutoff); }) : state;
    }
    if (kind == "number") {
        const int n = as_int(require(spec, "n", path), path + ".n");
        auto state = at_path(path, [&] { return number_state(n); });
        return has_cutoff ? at_path(path, [&] { return state.with_cutoff(cutoff); }) : state;
    }
    if (kind == "amplitudes") {
        const Json& list = require(spec, "amplitudes", path);
        if (!list.is_array() || list.empty()) {
            throw ConfigError(path + ".amplitudes", "expected a non-empty array");
        }
        std::vector<Complex> amps;
        for (size_t i = 0; i < list.size(); ++i) {
            amps.push_back(as_complex(list[i], path + ".amplitudes[" + std::to_string(i) + "]"));
        }
        return at_path(path, [&] { return FockVector(amps); });
    }
    throw ConfigError(path + ".kind", "unknown state kind '" + kind + "'");
}

}  // namespace

FockVector parse_pure_state_spec(const Json& spec, const std::string& path) {
    if (!spec.is_object()) {
        throw ConfigError(path, "expected a state object");
    }
    if (spec.value("kind", std::string()) == "ensemble") {
        throw ConfigError(path + ".kind", "a pure state is required here");
    }
    FockVector state = parse_pure_kind(spec, path);
    if (spec.contains("phase")) {
        state = phase_shift(state, as_number(spec.at("phase"), path + ".phase"));
    }
    return state;
}

SignalState parse_state_spec(const Json& spec, const std::string& path) {
    if (!spec.is_object()) {
        throw ConfigError(path, "expected a state object");
    }
    if (spec.value("kind", std::string()) != "ensemble") {
        return parse_pure_state_spec(spec, path);
    }
    const Json& list = require(spec, "members", path);
    if (!list.is_array() || list.empty()) {
        throw ConfigError(path + ".members", "expected a non-empty array");
    }
    std::vector<StateEnsemble::Member> members;
    for (size_t i = 0; i < list.size(); ++i) {
        const std::string p = path + ".members[" + std::to_string(i) + "]";
        const double w = as_number(require(list[i], "weight", p), p + ".weight");
        members.push_back({w, parse_pure_state_spec(require(list[i], "state", p), p + ".state")});
    }
    return at_path(path, [&] { return StateEnsemble(std::move(members)); });
}

ExperimentConfig parse_experiment_config(const Json& doc) {
    if (!doc.is_object()) {
        throw ConfigError("config", "expected a JSON object");
    }
    static const char* kKnown[] = {"signal",     "reference", "N",
                                   "sweep_settings", "trials_per_setting", "detector",
                                   "correct_efficiency", "seed", "max_total_photons",
                                   "threads",    "name",      "description"};
    for (const auto& [key, value] : doc.items()) {
        if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
            throw ConfigError("config." + key, "unknown field");
        }
    }
    ExperimentConfig config;
    config.signal = parse_state_spec(require(doc, "signal", "config"), "config.signal");
    if (doc.contains("reference")) {
        config.reference = parse_pure_state_spec(doc.at("reference"), "config.reference");
    }
    if (doc.contains("N")) {
        config.order = as_int(doc.at("N"), "config.N");
    }
    if (!doc.contains("reference")) {
        config.reference = at_path("config.N", [&] { return binomial_state(config.order); });
    }
    if (doc.contains("sweep_settings")) {
        config.sweep_settings = as_int(doc.at("sweep_settings"), "config.sweep_settings");
    }
    if (doc.contains("trials_per_setting")) {
        const Json& v = doc.at("trials_per_setting");
        if (!v.is_number_integer()) {
            throw ConfigError("config.trials_per_setting", "expected an integer");
        }
        config.trials_per_setting = v.get<int64_t>();
    }
    if (doc.contains("detector")) {
        const Json& det = doc.at("detector");
        const Json& eta = require(det, "eta", "config.detector");
        config.detector = at_path("config.detector.eta", [&] {
            if (eta.is_array()) {
                std::vector<double> etas;
                for (const auto& e : eta) {
                    etas.push_back(as_number(e, "config.detector.eta[]"));
                }
                return DetectorModel(std::move(etas));
            }
            return DetectorModel(as_number(eta, "config.detector.eta"));
        });
    }
    if (doc.contains("correct_efficiency")) {
        if (!doc.at("correct_efficiency").is_boolean()) {
            throw ConfigError("config.correct_efficiency", "expected a boolean");
        }
        config.correct_efficiency = doc.at("correct_efficiency").get<bool>();
    }
    if (doc.contains("seed")) {
        const Json& v = doc.at("seed");
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<int64_t>() < 0)) {
            throw ConfigError("config.seed", "expected a non-negative integer");
        }
        config.seed = v.get<uint64_t>();
    }
    if (doc.contains("max_total_photons")) {
        config.max_total_photons = as_int(doc.at("max_total_photons"), "config.max_total_photons");
    }
    if (doc.contains("threads")) {
        config.threads = as_int(doc.at("threads"), "config.threads");
    }
    at_path("config", [&] {
        config.validate();
        return 0;
    });
    return config;
}

Network parse_network(const Json& doc) {
    const Json* elements = &doc;
    int num_modes = 0;
    if (doc.is_object()) {
        elements = &require(doc, "elements", "network");
        if (doc.contains("num_modes")) {
            num_modes = as_int(doc.at("num_modes"), "network.num_modes");
        }
    }
    if (!elements->is_array()) {
        throw ConfigError("network.elements", "expected an array of elements");
    }
    std::vector<NetworkElement> list;
    int max_mode = -1;
    for (size_t i = 0; i < elements->size(); ++i) {
        const Json& e = (*elements)[i];
        const std::string p = "network.elements[" + std::to_string(i) + "]";
        if (!e.is_object() || e.size() != 1) {
            throw ConfigError(p, "expected an object with exactly one of bs, ps, swap");
        }
        const std::string key = e.begin().key();
        const Json& args = e.begin().value();
        if (!args.is_array() || args.size() != 2) {
            throw ConfigError(p + "." + key, "expected a two-element array");
        }
        if (key == "bs" || key == "swap") {
            const int a = as_int(args[0], p + "." + key + "[0]");
            const int b = as_int(args[1], p + "." + key + "[1]");
            max_mode = std::max({max_mode, a, b});
            if (key == "bs") {
                list.push_back(BeamSplitter{a, b});
            } else {
                list.push_back(Swap{a, b});
            }
        } else if (key == "ps") {
            const int mode = as_int(args[0], p + ".ps[0]");
            max_mode = std::max(max_mode, mode);
            list.push_back(PhaseShifter{mode, as_number(args[1], p + ".ps[1]")});
        } else {
            throw ConfigError(p, "unknown element '" + key + "'");
        }
    }
    if (num_modes == 0) {
        num_modes = std::max(1, max_mode + 1);
    }
    return at_path("network", [&] { return Network(num_modes, std::move(list)); });
}

Json network_to_json(const Network& network) {
    Json elements = Json::array();
    for (const auto& e : network.elements()) {
        std::visit(
            [&](const auto& el) {
                using T = std::decay_t<decltype(el)>;
                if constexpr (std::is_same_v<T, BeamSplitter>) {
                    elements.push_back({{"bs", {el.mode_a, el.mode_b}}});
                } else if constexpr (std::is_same_v<T, PhaseShifter>) {
                    elements.push_back({{"ps", {el.mode, el.theta}}});
                } else {
                    elements.push_back({{"swap", {el.mode_a, el.mode_b}}});
                }
            },
            e);
    }
    return {{"num_modes", network.num_modes()}, {"elements", elements}};
}

Json transform_to_json(const ModeTransform& transform) {
    Json data = Json::array();
    const auto& m = transform.matrix();
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            data.push_back(complex_to_json(m(r, c)));
        }
    }
    return {{"rows", m.rows()},
            {"cols", m.cols()},
            {"global_phase", transform.global_phase()},
            {"data", data}};
}

Json count_distribution_to_json(const JointCountDistribution& dist) {
    Json counts = Json::array();
    Json probs = Json::array();
    for (const auto& [tuple, p] : dist.probs) {
        counts.push_back(tuple);
        probs.push_back(p);
    }
    return {{"num_detectors", dist.num_detectors},
            {"cutoff", dist.cutoff},
            {"counts", counts},
            {"probs", probs}};
}

JointCountDistribution count_distribution_from_json(const Json& doc) {
    const Json& counts = require(doc, "counts", "distribution");
    const Json& probs = require(doc, "probs", "distribution");
    if (!counts.is_array() || !probs.is_array() || counts.size() != probs.size()) {
        throw ConfigError("distribution", "counts and probs must be arrays of equal length");
    }
    JointCountDistribution dist;
    int max_count = 0;
    for (size_t i = 0; i < counts.size(); ++i) {
        const std::string p = "distribution.counts[" + std::to_string(i) + "]";
        if (!counts[i].is_array() || counts[i].empty()) {
            throw ConfigError(p, "expected a non-empty integer array");
        }
        CountTuple tuple;
        for (const auto& c : counts[i]) {
            tuple.push_back(as_int(c, p));
            max_count = std::max(max_count, tuple.back());
        }
        if (dist.num_detectors == 0) {
            dist.num_detectors = static_cast<int>(tuple.size());
        }
        dist.probs[tuple] += as_number(probs[i], "distribution.probs[" + std::to_string(i) + "]");
    }
    if (doc.contains("num_detectors")) {
        dist.num_detectors = as_int(doc.at("num_detectors"), "distribution.num_detectors");
    }
    dist.cutoff = doc.contains("cutoff") ? as_int(doc.at("cutoff"), "distribution.cutoff") : max_count;
    at_path("distribution", [&] {
        dist.check();
        return 0;
    });
    return dist;
}

Json metrics_to_json(const ComparisonMetrics& metrics) {
    return {{"max_abs_deviation", metrics.max_abs_deviation},
            {"rms_deviation", metrics.rms_deviation},
            {"max_rel_deviation", metrics.max_rel_deviation}};
}

Json diagnostics_to_json(const SweepDiagnostics& d) {
    return {{"signal_tail_above_N", d.signal_tail},
            {"reference_tail_above_N", d.reference_tail},
            {"truncated_input_mass", d.truncated_mass},
            {"max_total_photons", d.max_total_photons},
            {"inversion_cancellation_ratio", d.inversion_cancellation_ratio},
            {"inversion_cancellation_warning", d.inversion_cancellation_warning},
            {"inversion_negative_mass", d.inversion_negative_mass},
            {"nonuniform_efficiency", d.nonuniform_efficiency},
            {"rng_algorithm", d.rng_algorithm},
            {"seed", d.seed},
            {"trials_per_setting", d.trials_per_setting}};
}

}  // namespace phasesynth
