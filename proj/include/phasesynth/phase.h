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

#ifndef PHASESYNTH_PHASE_H
#define PHASESYNTH_PHASE_H

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "phasesynth/fock.h"

namespace phasesynth {

/// exp(i n theta)/sqrt(N+1) for n = 0..N.
class TruncatedPhaseState {
   public:
    TruncatedPhaseState(double theta, int order);

    double theta() const { return theta_; }
    int order() const { return order_; }
    std::vector<Complex> amplitudes() const;
    Complex operator[](int n) const;

   private:
    double theta_;
    int order_;
};

enum class DistributionSource { kAnalytic, kExactSimulated, kMonteCarlo };

std::string to_string(DistributionSource source);

struct PhasePoint {
    double theta;  // radians
    double value;  // 1/radian
    std::optional<double> stderr_value;
};

/// Sampled phase probability density.
struct PhaseDistribution {
    std::vector<PhasePoint> points;
    DistributionSource source = DistributionSource::kAnalytic;

    /// Trapezoidal integral over the sampled thetas, closing the period at 2 pi.
    /// Assumes the points form a uniform grid on [0, 2 pi).
    double periodic_trapezoid() const;
};

using SignalState = std::variant<FockVector, StateEnsemble>;

/// P(theta) = |sum_n c_n^* exp(i n theta)|^2 / 2 pi, weight-averaged for ensembles.
double canonical_density(const FockVector& state, double theta);
double canonical_density(const SignalState& state, double theta);
PhaseDistribution canonical_distribution(const SignalState& state, std::span<const double> thetas);

/// Uniform grid m 2pi/count for m = 0..count-1.
std::vector<double> uniform_theta_grid(int count);
/// Wraps an angle into [0, 2 pi).
double wrap_angle(double theta);

TruncatedPhaseState truncated_phase_state(double theta, int order);

/// <theta|psi>, zero-padding the state as needed.
Complex projection_amplitude(const FockVector& state, const TruncatedPhaseState& phase_state);
/// |<theta|psi>|^2.
double projection_probability(const FockVector& state, const TruncatedPhaseState& phase_state);

/// y_m = 2 p_m / (pi sum p). Normalization keeps a histogram of width pi/2 at unit area.
/// Throws std::domain_error for all-zero input, std::invalid_argument for negatives.
std::array<double, 4> normalize_counts(std::span<const double, 4> event_probs);
/// General-order form y_m = (N+1) p_m / (2 pi sum p), which is the above for N = 3.
std::vector<double> normalize_counts(std::span<const double> event_probs);

/// CSV with a '#' comment line then `theta,value,stderr`, 17 significant digits.
void write_csv(std::ostream& out, const PhaseDistribution& dist);
PhaseDistribution read_csv(std::istream& in);

}  // namespace phasesynth

#endif  // PHASESYNTH_PHASE_H
