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

#include "phasesynth/detector.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace phasesynth {

namespace {

// table[s][k] = C(s,k) eta^k (1-eta)^(s-k), the forward thinning kernel.
std::vector<std::vector<double>> thinning_table(double eta, int cutoff) {
    std::vector<std::vector<double>> table(cutoff + 1);
    for (int s = 0; s <= cutoff; ++s) {
        table[s].assign(s + 1, 0.0);
        for (int k = 0; k <= s; ++k) {
            const double log_c = std::lgamma(s + 1.0) - std::lgamma(k + 1.0) - std::lgamma(s - k + 1.0);
            table[s][k] = std::exp(log_c) * std::pow(eta, k) * std::pow(1.0 - eta, s - k);
        }
    }
    return table;
}

// table[m][s] = C(m,s) eta^-m (eta-1)^(m-s), the inverse kernel.
std::vector<std::vector<double>> inverse_table(double eta, int cutoff) {
    std::vector<std::vector<double>> table(cutoff + 1);
    for (int m = 0; m <= cutoff; ++m) {
        table[m].assign(m + 1, 0.0);
        for (int s = 0; s <= m; ++s) {
            const double log_c = std::lgamma(m + 1.0) - std::lgamma(s + 1.0) - std::lgamma(m - s + 1.0);
            table[m][s] = std::exp(log_c) * std::pow(eta, -m) * std::pow(eta - 1.0, m - s);
        }
    }
    return table;
}

void check_model(const JointCountDistribution& dist, const DetectorModel& model) {
    if (!model.uniform() && static_cast<int>(model.etas().size()) != dist.num_detectors) {
        throw std::invalid_argument("detector model has " + std::to_string(model.etas().size()) +
                                    " efficiencies for " + std::to_string(dist.num_detectors) +
                                    " detectors");
    }
}

}  // namespace

double JointCountDistribution::total() const {
    double t = 0.0;
    for (const auto& [counts, p] : probs) {
        t += p;
    }
    return t;
}

double JointCountDistribution::probability(const CountTuple& counts) const {
    auto it = probs.find(counts);
    return it == probs.end() ? 0.0 : it->second;
}

void JointCountDistribution::check(double tolerance) const {
    for (const auto& [counts, p] : probs) {
        if (static_cast<int>(counts.size()) != num_detectors) {
            throw std::invalid_argument("count tuple length does not match detector count");
        }
        for (int c : counts) {
            if (c < 0 || c > cutoff) {
                throw std::invalid_argument("count outside [0, cutoff]");
            }
        }
        if (p < -tolerance) {
            throw std::invalid_argument("negative probability in joint count distribution");
        }
    }
    if (total() > 1.0 + 1e-9) {
        throw std::invalid_argument("joint count distribution total exceeds 1");
    }
}

DetectorModel::DetectorModel(double eta) : DetectorModel(std::vector<double>{eta}) {}

DetectorModel::DetectorModel(std::vector<double> etas) : etas_(std::move(etas)) {
    if (etas_.empty()) {
        throw std::invalid_argument("detector model needs at least one efficiency");
    }
    for (double e : etas_) {
        if (!(e >= 0.0 && e <= 1.0)) {
            throw std::invalid_argument("detector efficiency must lie in [0, 1]");
        }
    }
}

double DetectorModel::eta(int detector) const {
    if (etas_.size() == 1) {
        return etas_[0];
    }
    return etas_.at(static_cast<size_t>(detector));
}

bool DetectorModel::uniform() const {
    return std::all_of(etas_.begin(), etas_.end(), [&](double e) { return e == etas_[0]; });
}

bool DetectorModel::ideal() const {
    return std::all_of(etas_.begin(), etas_.end(), [](double e) { return e == 1.0; });
}

JointCountDistribution apply_efficiency(const JointCountDistribution& ideal,
                                        const DetectorModel& model) {
    check_model(ideal, model);
    JointCountDistribution current = ideal;
    // The kernel factorizes over detectors, so thin one axis at a time.
    for (int axis = 0; axis < ideal.num_detectors; ++axis) {
        const double eta = model.eta(axis);
        if (eta == 1.0) {
            continue;
        }
        const auto table = thinning_table(eta, ideal.cutoff);
        std::map<CountTuple, double> next;
        for (const auto& [counts, p] : current.probs) {
            CountTuple out = counts;
            const int s = counts[axis];
            for (int k = 0; k <= s; ++k) {
                out[axis] = k;
                next[out] += table[s][k] * p;
            }
        }
        current.probs = std::move(next);
    }
    return current;
}

JointCountDistribution invert_efficiency(const JointCountDistribution& counted,
                                         const DetectorModel& model,
                                         InversionDiagnostics* diagnostics, double eta_min) {
    check_model(counted, model);
    for (int d = 0; d < counted.num_detectors; ++d) {
        if (!(model.eta(d) > eta_min)) {
            throw std::domain_error("efficiency " + std::to_string(model.eta(d)) +
                                    " too low for stable inversion (minimum " +
                                    std::to_string(eta_min) + ")");
        }
    }
    InversionDiagnostics diag;
    JointCountDistribution current = counted;
    for (int axis = 0; axis < counted.num_detectors; ++axis) {
        const double eta = model.eta(axis);
        if (eta == 1.0) {
            continue;
        }
        const auto table = inverse_table(eta, counted.cutoff);
        std::map<CountTuple, double> next;
        std::map<CountTuple, double> magnitude;
        for (const auto& [counts, q] : current.probs) {
            CountTuple out = counts;
            const int m = counts[axis];
            for (int s = 0; s <= m; ++s) {
                out[axis] = s;
                const double term = table[m][s] * q;
                next[out] += term;
                magnitude[out] += std::abs(term);
            }
        }
        double total_magnitude = 0.0;
        double total_result = 0.0;
        for (const auto& [counts, value] : next) {
            total_magnitude += magnitude[counts];
            total_result += std::abs(value);
        }
        if (total_result > 0.0) {
            diag.max_cancellation_ratio =
                std::max(diag.max_cancellation_ratio, total_magnitude / total_result);
        }
        current.probs = std::move(next);
    }
    for (const auto& [counts, p] : current.probs) {
        if (p < 0.0) {
            diag.negative_mass += p;
        }
    }
    diag.cancellation_warning = diag.max_cancellation_ratio > kCancellationWarning;
    if (diagnostics != nullptr) {
        *diagnostics = diag;
    }
    return current;
}

CountCategory categorize(int count) {
    if (count < 0) {
        throw std::invalid_argument("photocount must be non-negative");
    }
    if (count == 0) {
        return CountCategory::kZero;
    }
    return count == 1 ? CountCategory::kOne : CountCategory::kMany;
}

CountTuple desired_event(int num_detectors, int zero_detector) {
    if (zero_detector < 0 || zero_detector >= num_detectors) {
        throw std::invalid_argument("zero detector index out of range");
    }
    CountTuple t(num_detectors, 1);
    t[zero_detector] = 0;
    return t;
}

int desired_event_index(const CountTuple& counts) {
    int zero_at = -1;
    for (int d = 0; d < static_cast<int>(counts.size()); ++d) {
        switch (categorize(counts[d])) {
            case CountCategory::kZero:
                if (zero_at >= 0) {
                    return -1;
                }
                zero_at = d;
                break;
            case CountCategory::kOne:
                break;
            case CountCategory::kMany:
                return -1;
        }
    }
    return zero_at;
}

}  // namespace phasesynth
