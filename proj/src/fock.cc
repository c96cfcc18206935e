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

#include "phasesynth/fock.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace phasesynth {

namespace {

constexpr int kMaxSeriesTerms = 4000;

double sum_norm(std::span<const Complex> amps) {
    double s = 0.0;
    for (const auto& c : amps) {
        s += std::norm(c);
    }
    return s;
}

// g_n = h_n / sqrt(n!) where h_n = (t/2)^{n/2} H_n[(alpha + t alpha*) / sqrt(2t)].
// The scaled recurrence h_{n+1} = (alpha + t alpha*) h_n - n t h_{n-1} has no
// singularity at t = 0, where it reduces to h_n = alpha^n.
std::vector<Complex> squeezed_series(const SqueezedParams& params, int last) {
    const Complex t = params.t();
    const Complex drive = params.alpha + t * std::conj(params.alpha);
    std::vector<Complex> g(static_cast<size_t>(last) + 1);
    g[0] = 1.0;
    if (last >= 1) {
        g[1] = drive;
    }
    for (int n = 1; n < last; ++n) {
        g[n + 1] = (drive * g[n] - std::sqrt(static_cast<double>(n)) * t * g[n - 1]) /
                   std::sqrt(static_cast<double>(n + 1));
    }
    return g;
}

// Fraction of the full (untruncated) squeezed-state norm that lies above `cutoff`.
double squeezed_tail(const SqueezedParams& params, int cutoff) {
    // Extend the series until terms are negligible relative to the running total.
    int last = std::max(cutoff + 64, 128);
    while (true) {
        auto g = squeezed_series(params, last);
        double head = 0.0;
        double total = 0.0;
        for (int n = 0; n <= last; ++n) {
            total += std::norm(g[n]);
            if (n <= cutoff) {
                head = total;
            }
        }
        const double last_terms = std::norm(g[last]) + std::norm(g[last - 1]);
        if (last_terms < 1e-18 * total) {
            return (total - head) / total;
        }
        if (last >= kMaxSeriesTerms) {
            throw std::domain_error("squeezed state series does not converge within " +
                                    std::to_string(kMaxSeriesTerms) + " terms");
        }
        last = std::min(2 * last, kMaxSeriesTerms);
    }
}

double poisson_tail(double mean, int cutoff) {
    if (mean == 0.0) {
        return 0.0;
    }
    // log p_n = -mean + n log(mean) - lgamma(n+1); sum terms above the cutoff.
    double tail = 0.0;
    const double mode = std::floor(mean);
    for (int n = cutoff + 1; n < cutoff + 1 + kMaxSeriesTerms; ++n) {
        const double log_p = -mean + n * std::log(mean) - std::lgamma(n + 1.0);
        const double p = std::exp(log_p);
        tail += p;
        if (n > mode && p < 1e-20 * std::max(tail, 1e-300)) {
            break;
        }
    }
    return tail;
}

}  // namespace

FockVector::FockVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) {
        throw std::invalid_argument("FockVector needs at least one amplitude");
    }
    const double n2 = sum_norm(amplitudes_);
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
        throw std::invalid_argument("FockVector amplitudes have zero or non-finite norm");
    }
    const double scale = 1.0 / std::sqrt(n2);
    for (auto& c : amplitudes_) {
        c *= scale;
    }
}

Complex FockVector::operator[](int n) const {
    if (n < 0 || n > cutoff()) {
        return 0.0;
    }
    return amplitudes_[static_cast<size_t>(n)];
}

double FockVector::norm_squared() const { return sum_norm(amplitudes_); }

double FockVector::mean_photon_number() const {
    double mean = 0.0;
    for (int n = 0; n <= cutoff(); ++n) {
        mean += n * std::norm(amplitudes_[n]);
    }
    return mean;
}

double FockVector::tail_above(int n) const {
    double tail = 0.0;
    for (int k = std::max(n + 1, 0); k <= cutoff(); ++k) {
        tail += std::norm(amplitudes_[k]);
    }
    return tail;
}

FockVector FockVector::with_cutoff(int cutoff) const {
    if (cutoff < 0) {
        throw std::invalid_argument("cutoff must be non-negative");
    }
    std::vector<Complex> amps(static_cast<size_t>(cutoff) + 1, 0.0);
    const int keep = std::min(cutoff, this->cutoff());
    std::copy_n(amplitudes_.begin(), keep + 1, amps.begin());
    return FockVector(std::move(amps));
}

Complex SqueezedParams::t() const { return std::polar(std::tanh(zeta_mag), phi); }

SqueezedParams SqueezedParams::from_t(Complex alpha, Complex t) {
    const double mag = std::abs(t);
    if (!(mag < 1.0)) {
        throw std::invalid_argument("squeezing requires |t| < 1");
    }
    return SqueezedParams{alpha, std::atanh(mag), mag == 0.0 ? 0.0 : std::arg(t)};
}

StateEnsemble::StateEnsemble(std::vector<Member> members) : members_(std::move(members)) {
    if (members_.empty()) {
        throw std::invalid_argument("ensemble needs at least one member");
    }
    double total = 0.0;
    for (const auto& m : members_) {
        if (!(m.weight >= 0.0)) {
            throw std::invalid_argument("ensemble weights must be non-negative");
        }
        total += m.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("ensemble weights must sum to 1, got " + std::to_string(total));
    }
}

int StateEnsemble::max_cutoff() const {
    int c = 0;
    for (const auto& m : members_) {
        c = std::max(c, m.state.cutoff());
    }
    return c;
}

double hermite(int n, double x) {
    if (n < 0) {
        throw std::invalid_argument("hermite order must be non-negative");
    }
    double prev = 1.0;
    if (n == 0) {
        return prev;
    }
    double cur = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

Complex hermite(int n, Complex x) {
    if (n < 0) {
        throw std::invalid_argument("hermite order must be non-negative");
    }
    Complex prev = 1.0;
    if (n == 0) {
        return prev;
    }
    Complex cur = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const Complex next = 2.0 * x * cur - 2.0 * static_cast<double>(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

int coherent_cutoff(double mean_photon_number, double tail_bound) {
    if (!(mean_photon_number >= 0.0)) {
        throw std::invalid_argument("mean photon number must be non-negative");
    }
    int cutoff = 0;
    while (poisson_tail(mean_photon_number, cutoff) >= tail_bound) {
        ++cutoff;
    }
    return cutoff;
}

FockVector coherent_state(Complex alpha, int cutoff) {
    if (cutoff < 0) {
        throw std::invalid_argument("cutoff must be non-negative");
    }
    const double mean = std::norm(alpha);
    const double tail = poisson_tail(mean, cutoff);
    if (tail >= kDefaultTailBound) {
        throw std::invalid_argument("cutoff " + std::to_string(cutoff) +
                                    " too small for coherent amplitude with mean photon number " +
                                    std::to_string(mean) + " (tail " + std::to_string(tail) + ")");
    }
    std::vector<Complex> amps(static_cast<size_t>(cutoff) + 1);
    amps[0] = 1.0;
    for (int n = 1; n <= cutoff; ++n) {
        amps[n] = amps[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    }
    return FockVector(std::move(amps));
}

int squeezed_cutoff(const SqueezedParams& params, double tail_bound) {
    if (!(std::abs(params.t()) < 1.0)) {
        throw std::invalid_argument("squeezing requires |t| < 1");
    }
    int cutoff = 0;
    while (squeezed_tail(params, cutoff) >= tail_bound) {
        ++cutoff;
        if (cutoff > kMaxSeriesTerms) {
            throw std::domain_error("no cutoff reaches the requested tail bound");
        }
    }
    return cutoff;
}

FockVector squeezed_state(const SqueezedParams& params, int cutoff) {
    if (cutoff < 0) {
        throw std::invalid_argument("cutoff must be non-negative");
    }
    if (params.zeta_mag < 0.0) {
        throw std::invalid_argument("squeezing parameter |zeta| must be non-negative");
    }
    if (!(std::abs(params.t()) < 1.0)) {
        throw std::invalid_argument("squeezing requires |t| < 1");
    }
    if (params.zeta_mag == 0.0) {
        return coherent_state(params.alpha, cutoff);
    }
    const double tail = squeezed_tail(params, cutoff);
    if (tail >= kDefaultTailBound) {
        throw std::invalid_argument("cutoff " + std::to_string(cutoff) +
                                    " too small for squeezed state (tail " + std::to_string(tail) +
                                    ")");
    }
    return FockVector(squeezed_series(params, cutoff));
}

FockVector binomial_state(int n_max) {
    if (n_max < 0) {
        throw std::invalid_argument("binomial state order must be non-negative");
    }
    std::vector<Complex> amps(static_cast<size_t>(n_max) + 1);
    const double log_scale = -0.5 * n_max * std::log(2.0);
    for (int n = 0; n <= n_max; ++n) {
        const double log_choose =
            std::lgamma(n_max + 1.0) - std::lgamma(n + 1.0) - std::lgamma(n_max - n + 1.0);
        amps[n] = std::exp(0.5 * log_choose + log_scale);
    }
    return FockVector(std::move(amps));
}

FockVector number_state(int n) {
    if (n < 0) {
        throw std::invalid_argument("photon number must be non-negative");
    }
    std::vector<Complex> amps(static_cast<size_t>(n) + 1, 0.0);
    amps[n] = 1.0;
    return FockVector(std::move(amps));
}

FockVector phase_shift(const FockVector& state, double theta) {
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    for (int n = 1; n < static_cast<int>(amps.size()); ++n) {
        amps[n] *= std::polar(1.0, n * theta);
    }
    return FockVector(std::move(amps));
}

SqueezedParams weak_field_reference_params() {
    return SqueezedParams::from_t((2.0 + std::sqrt(2.0)) / 3.0, 0.5);
}

SqueezedParams early_terms_reference_params(int n) {
    if (n < 1) {
        throw std::invalid_argument("binomial order must be positive");
    }
    return SqueezedParams::from_t(2.0 / 3.0 * std::sqrt(static_cast<double>(n)), 0.5);
}

double min_quadrature_variance_ratio(const FockVector& state) {
    Complex a1 = 0.0;
    Complex a2 = 0.0;
    const auto c = state.amplitudes();
    for (int n = 1; n <= state.cutoff(); ++n) {
        a1 += std::conj(c[n - 1]) * c[n] * std::sqrt(static_cast<double>(n));
        if (n >= 2) {
            a2 += std::conj(c[n - 2]) * c[n] * std::sqrt(static_cast<double>(n) * (n - 1));
        }
    }
    const double number_var = state.mean_photon_number() - std::norm(a1);
    const Complex pair_var = a2 - a1 * a1;
    return 1.0 + 2.0 * number_var - 2.0 * std::abs(pair_var);
}

}  // namespace phasesynth
