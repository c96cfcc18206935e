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

// Built-in self-check suite behind `phasesynth validate`.

#ifndef PHASESYNTH_VALIDATE_H
#define PHASESYNTH_VALIDATE_H

#include <optional>
#include <string>
#include <vector>

#include "phasesynth/io.h"

namespace phasesynth {

/// Deliberate corruptions used to confirm that each check can fail.
enum class Fault { kNone, kUnitarity, kDftEquivalence, kEngineEquivalence, kEventRate, kBernoulli, kParseval };

std::optional<Fault> parse_fault(const std::string& name);
std::vector<std::string> fault_names();

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool passed() const;
};

ValidationReport run_validation(Fault fault = Fault::kNone);

Json report_to_json(const ValidationReport& report);

}  // namespace phasesynth

#endif  // PHASESYNTH_VALIDATE_H
