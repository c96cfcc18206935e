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

// JSON encodings for states, networks, transforms, count distributions, configs.
//
// State spec grammar, `{"kind": ..., ...}`:
//   coherent        alpha: number | [re, im]   or   mean_photon_number: number
//   squeezed        alpha, and t: number | [re, im]   or   zeta: number, phi: number
//   squeezed_approx N: integer (default 3), regime: "weak_field" (default) | "early_terms"
//   binomial        N: integer
//   number          n: integer
//   amplitudes      amplitudes: [[re, im], ...]
//   ensemble        members: [{"weight": w, "state": <spec>}, ...]
// Every pure kind accepts optional `cutoff` (integer; default: smallest with tail
// below 1e-6) and `phase` (radians, applied as a phase shift).

#ifndef PHASESYNTH_IO_H
#define PHASESYNTH_IO_H

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "phasesynth/detector.h"
#include "phasesynth/experiment.h"
#include "phasesynth/optics.h"
#include "phasesynth/phase.h"

namespace phasesynth {

using Json = nlohmann::json;

/// Raised for malformed or invalid JSON documents; `path` names the offending field.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(const std::string& path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(path) {}
    const std::string& path() const { return path_; }

   private:
    std::string path_;
};

SignalState parse_state_spec(const Json& spec, const std::string& path = "state");
FockVector parse_pure_state_spec(const Json& spec, const std::string& path = "state");

ExperimentConfig parse_experiment_config(const Json& doc);

/// Accepts a bare element array or `{"num_modes": n, "elements": [...]}`.
Network parse_network(const Json& doc);
Json network_to_json(const Network& network);

/// Row-major `[[re, im], ...]` under "data", with "rows", "cols", "global_phase".
Json transform_to_json(const ModeTransform& transform);

Json count_distribution_to_json(const JointCountDistribution& dist);
JointCountDistribution count_distribution_from_json(const Json& doc);

Json metrics_to_json(const ComparisonMetrics& metrics);
Json diagnostics_to_json(const SweepDiagnostics& diagnostics);

}  // namespace phasesynth

#endif  // PHASESYNTH_IO_H
