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

#ifndef PHASESYNTH_EXPERIMENT_H
#define PHASESYNTH_EXPERIMENT_H

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "phasesynth/detector.h"
#include "phasesynth/fock.h"
#include "phasesynth/optics.h"
#include "phasesynth/phase.h"

namespace phasesynth {

/// Phase offset applied to the reference port on top of the sweep shift. With the
/// multiport acting as U^dagger on input creation operators, a positive-coefficient
/// binomial reference projects event m onto theta_m + pi; the offset moves it to theta_m.
inline constexpr double kReferencePortOffset = std::numbers::pi;

/// Upper bound on the automatically chosen photon total.
inline constexpr int kMaxAutoPhotonTotal = 40;

struct ExperimentConfig {
    SignalState signal = FockVector({1.0});
    FockVector reference = binomial_state(3);
    int order = 3;  // N; the multiport has N+1 ports
    int sweep_settings = 4;  // K
    int64_t trials_per_setting = 100000;
    DetectorModel detector{1.0};
    bool correct_efficiency = false;
    uint64_t seed = 1;
    /// Largest photon total propagated; 0 picks signal cutoff + reference cutoff.
    int max_total_photons = 0;
    /// Worker threads; 0 reads PHASESYNTH_THREADS, falling back to hardware concurrency.
    int threads = 0;

    /// Throws std::invalid_argument on violated invariants.
    void validate() const;
    int effective_photon_total() const;
    double sweep_step() const;
};

struct SweepDiagnostics {
    /// Signal probability mass on photon numbers above N.
    double signal_tail = 0.0;
    /// Reference probability mass above N (irrelevant to the projection, sets the rate).
    double reference_tail = 0.0;
    /// Input probability mass above the propagated photon total.
    double truncated_mass = 0.0;
    int max_total_photons = 0;
    double inversion_cancellation_ratio = 0.0;
    bool inversion_cancellation_warning = false;
    double inversion_negative_mass = 0.0;
    bool nonuniform_efficiency = false;
    std::string rng_algorithm;
    uint64_t seed = 0;
    int64_t trials_per_setting = 0;
};

struct SweepResult {
    PhaseDistribution points;
    std::vector<double> setting_shifts;
    /// Per setting, probabilities (or frequencies) of the N+1 desired events.
    std::vector<std::vector<double>> raw_event_probs;
    /// Fraction of all runs producing any desired event, averaged over settings.
    double desired_event_rate = 0.0;
    SweepDiagnostics diagnostics;
};

struct ComparisonMetrics {
    double max_abs_deviation = 0.0;
    double rms_deviation = 0.0;
    double max_rel_deviation = 0.0;
};

/// The physical multiport as an evolution operator: dft_transform(N).adjoint().
ModeTransform multiport_transform(int order);

/// Ideal joint photocount distribution for one signal/reference pair through the
/// multiport, over all photon totals up to `max_total`.
JointCountDistribution ideal_count_distribution(const FockVector& signal,
                                                const FockVector& reference, int order,
                                                int max_total);
/// Ideal probabilities of the N+1 desired events (N-photon sector only).
std::vector<double> ideal_desired_event_probs(const FockVector& signal,
                                              const FockVector& reference, int order);

SweepResult run_exact(const ExperimentConfig& config);
SweepResult run_monte_carlo(const ExperimentConfig& config);

ComparisonMetrics compare_to_canonical(const SweepResult& result, const SignalState& truth);
ComparisonMetrics compare_distributions(const PhaseDistribution& measured,
                                        const SignalState& truth);

/// Equally spaced samples needed to resolve the exp(i N theta) component: 4N.
int minimum_point_count(int order);

/// Threads to use given a request (0 = environment / hardware default).
int resolve_thread_count(int requested);

}  // namespace phasesynth

#endif  // PHASESYNTH_EXPERIMENT_H
