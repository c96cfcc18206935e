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

#ifndef PHASESYNTH_FOCK_H
#define PHASESYNTH_FOCK_H

#include <complex>
#include <span>
#include <vector>

namespace phasesynth {

using Complex = std::complex<double>;

/// Largest probability mass a constructor may drop when truncating at a cutoff.
inline constexpr double kDefaultTailBound = 1e-6;

/// Single-mode pure state in the photon-number basis, amplitudes c_0..c_D.
///
/// Always normalized: constructors that truncate renormalize over 0..cutoff.
class FockVector {
   public:
    /// Renormalizes `amplitudes`. Throws std::invalid_argument when empty or zero.
    explicit FockVector(std::vector<Complex> amplitudes);

    int cutoff() const { return static_cast<int>(amplitudes_.size()) - 1; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    /// Amplitude of |n>, zero beyond the cutoff.
    Complex operator[](int n) const;

    double norm_squared() const;
    double mean_photon_number() const;
    /// Probability mass on photon numbers > n.
    double tail_above(int n) const;
    /// Copy padded with zeros (or truncated and renormalized) to `cutoff`.
    FockVector with_cutoff(int cutoff) const;

   private:
    std::vector<Complex> amplitudes_;
};

/// Squeezing and displacement parameters of a squeezed state.
struct SqueezedParams {
    Complex alpha;
    double zeta_mag = 0.0;
    double phi = 0.0;

    /// t = exp(i phi) tanh|zeta|.
    Complex t() const;
    /// Inverse of t(): builds params from a complex t with |t| < 1.
    static SqueezedParams from_t(Complex alpha, Complex t);
};

/// Statistical mixture of pure states.
class StateEnsemble {
   public:
    struct Member {
        double weight;
        FockVector state;
    };

    /// Weights must be non-negative and sum to 1 within 1e-12.
    explicit StateEnsemble(std::vector<Member> members);

    std::span<const Member> members() const { return members_; }
    int max_cutoff() const;

   private:
    std::vector<Member> members_;
};

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
double hermite(int n, double x);
/// Complex-argument version used by squeezed_state.
Complex hermite(int n, Complex x);

/// Smallest cutoff whose Poissonian tail beyond it is below `tail_bound`.
int coherent_cutoff(double mean_photon_number, double tail_bound = kDefaultTailBound);
FockVector coherent_state(Complex alpha, int cutoff);
/// Smallest cutoff for which the squeezed state tail is below `tail_bound`.
int squeezed_cutoff(const SqueezedParams& params, double tail_bound = kDefaultTailBound);
FockVector squeezed_state(const SqueezedParams& params, int cutoff);
FockVector binomial_state(int n_max);
FockVector number_state(int n);
FockVector phase_shift(const FockVector& state, double theta);

/// Reference state approximating binomial_state(3) on its top coefficients:
/// t = 0.5, alpha = (2 + sqrt 2) / 3.
SqueezedParams weak_field_reference_params();
/// Squeezed state matching the first few binomial coefficients of binomial_state(n):
/// t = 0.5, alpha = (2/3) sqrt(n).
SqueezedParams early_terms_reference_params(int n);

/// Variance of the least-noisy quadrature relative to the vacuum level.
double min_quadrature_variance_ratio(const FockVector& state);

}  // namespace phasesynth

#endif  // PHASESYNTH_FOCK_H
