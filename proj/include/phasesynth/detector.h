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

#ifndef PHASESYNTH_DETECTOR_H
#define PHASESYNTH_DETECTOR_H

#include <map>
#include <vector>

#include "phasesynth/optics.h"

namespace phasesynth {

using CountTuple = Occupation;

/// Joint photocount probabilities over `num_detectors` detectors, each count <= cutoff.
struct JointCountDistribution {
    int num_detectors = 0;
    int cutoff = 0;
    std::map<CountTuple, double> probs;

    double total() const;
    double probability(const CountTuple& counts) const;
    /// Throws std::invalid_argument if any probability is below -tolerance, any
    /// tuple is malformed, or the total exceeds 1 + 1e-9.
    void check(double tolerance = 1e-12) const;
};

/// Per-detector one-photon efficiency.
class DetectorModel {
   public:
    /// Same efficiency on every detector.
    explicit DetectorModel(double eta = 1.0);
    /// Distinct efficiencies; runs with unequal values go beyond the uniform model.
    explicit DetectorModel(std::vector<double> etas);

    double eta(int detector) const;
    bool uniform() const;
    bool ideal() const;
    const std::vector<double>& etas() const { return etas_; }

   private:
    std::vector<double> etas_;
};

/// Inversion below this efficiency is rejected as numerically unstable.
inline constexpr double kMinInvertibleEta = 0.3;
/// Warn when the alternating inverse series cancels by more than this factor.
inline constexpr double kCancellationWarning = 1e6;

struct InversionDiagnostics {
    double max_cancellation_ratio = 0.0;
    bool cancellation_warning = false;
    /// Sum of negative probabilities in the inverted distribution (<= 0).
    double negative_mass = 0.0;
};

/// Binomial thinning of every detector's count with its efficiency.
JointCountDistribution apply_efficiency(const JointCountDistribution& ideal,
                                        const DetectorModel& model);

/// Per-axis inverse Bernoulli transform, truncated at the stored cutoff.
/// Throws std::domain_error when any efficiency is <= `eta_min`.
JointCountDistribution invert_efficiency(const JointCountDistribution& counted,
                                         const DetectorModel& model,
                                         InversionDiagnostics* diagnostics = nullptr,
                                         double eta_min = kMinInvertibleEta);

enum class CountCategory { kZero, kOne, kMany };

CountCategory categorize(int count);

/// The N+1 "desired" patterns: detector m reads zero, every other detector reads one.
CountTuple desired_event(int num_detectors, int zero_detector);
/// Index of the zero detector if `counts` categorizes as a desired event, else -1.
int desired_event_index(const CountTuple& counts);

}  // namespace phasesynth

#endif  // PHASESYNTH_DETECTOR_H
