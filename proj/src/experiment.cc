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

#include "phasesynth/experiment.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <random>
#include <stdexcept>
#include <thread>

namespace phasesynth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct SettingOutcome {
    std::vector<double> event_probs;
    std::vector<double> y;
    std::vector<double> stderrs;
    double desired_rate = 0.0;
    double truncated_mass = 0.0;
    InversionDiagnostics inversion;
};

struct Member {
    double weight;
    const FockVector* state;
};

std::vector<Member> members_of(const SignalState& signal) {
    std::vector<Member> out;
    if (const auto* pure = std::get_if<FockVector>(&signal)) {
        out.push_back({1.0, pure});
    } else {
        for (const auto& m : std::get<StateEnsemble>(signal).members()) {
            out.push_back({m.weight, &m.state});
        }
    }
    return out;
}

int signal_cutoff(const SignalState& signal) {
    if (const auto* pure = std::get_if<FockVector>(&signal)) {
        return pure->cutoff();
    }
    return std::get<StateEnsemble>(signal).max_cutoff();
}

Occupation input_occupation(int modes, int signal_photons, int reference_photons) {
    Occupation occ(modes, 0);
    occ[0] = signal_photons;
    occ[1] = reference_photons;
    return occ;
}

double truncated_input_mass(const FockVector& signal, const FockVector& reference, int max_total) {
    double mass = 0.0;
    for (int a = 0; a <= signal.cutoff(); ++a) {
        for (int b = std::max(0, max_total - a + 1); b <= reference.cutoff(); ++b) {
            mass += std::norm(signal[a]) * std::norm(reference[b]);
        }
    }
    return mass;
}

JointCountDistribution mixed_ideal_distribution(const SignalState& signal,
                                                const FockVector& reference, int order,
                                                int max_total) {
    JointCountDistribution mixed{order + 1, max_total, {}};
    for (const auto& m : members_of(signal)) {
        const auto dist = ideal_count_distribution(*m.state, reference, order, max_total);
        for (const auto& [counts, p] : dist.probs) {
            mixed.probs[counts] += m.weight * p;
        }
    }
    return mixed;
}

std::vector<double> desired_probs_from(const JointCountDistribution& dist) {
    std::vector<double> probs(dist.num_detectors);
    for (int m = 0; m < dist.num_detectors; ++m) {
        probs[m] = dist.probability(desired_event(dist.num_detectors, m));
    }
    return probs;
}

// Delta-method standard errors of y_m = f_m / (w sum f) under multinomial sampling.
std::vector<double> normalized_stderrs(const std::vector<double>& freqs, int64_t trials) {
    const size_t d = freqs.size();
    double sum = 0.0;
    for (double f : freqs) {
        sum += f;
    }
    std::vector<double> errs(d, 0.0);
    if (sum <= 0.0 || trials <= 0) {
        return errs;
    }
    const double scale = static_cast<double>(d) / kTwoPi;
    for (size_t m = 0; m < d; ++m) {
        std::vector<double> grad(d);
        for (size_t k = 0; k < d; ++k) {
            grad[k] = scale * ((m == k ? 1.0 / sum : 0.0) - freqs[m] / (sum * sum));
        }
        double var = 0.0;
        for (size_t j = 0; j < d; ++j) {
            for (size_t k = 0; k < d; ++k) {
                const double cov = ((j == k) ? freqs[j] : 0.0) - freqs[j] * freqs[k];
                var += grad[j] * grad[k] * cov;
            }
        }
        errs[m] = std::sqrt(std::max(var, 0.0) / static_cast<double>(trials));
    }
    return errs;
}

template <typename Fn>
std::vector<SettingOutcome> run_settings(int count, int threads, Fn&& fn) {
    std::vector<SettingOutcome> results(count);
    std::vector<std::exception_ptr> errors(count);
    const int workers = std::max(1, std::min(threads, count));
    auto work = [&](int first) {
        for (int k = first; k < count; k += workers) {
            try {
                results[k] = fn(k);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return results;
}

SweepResult assemble(const ExperimentConfig& config, const std::vector<SettingOutcome>& outcomes,
                     DistributionSource source) {
    SweepResult result;
    result.points.source = source;
    const int d = config.order + 1;
    const double step = config.sweep_step();
    double rate = 0.0;
    for (int k = 0; k < config.sweep_settings; ++k) {
        const auto& o = outcomes[k];
        const double shift = k * step;
        result.setting_shifts.push_back(shift);
        result.raw_event_probs.push_back(o.event_probs);
        for (int m = 0; m < d; ++m) {
            PhasePoint p{wrap_angle(kTwoPi * m / d + shift), o.y[m], std::nullopt};
            if (!o.stderrs.empty()) {
                p.stderr_value = o.stderrs[m];
            }
            result.points.points.push_back(p);
        }
        rate += o.desired_rate;
        result.diagnostics.truncated_mass = std::max(result.diagnostics.truncated_mass, o.truncated_mass);
        result.diagnostics.inversion_cancellation_ratio =
            std::max(result.diagnostics.inversion_cancellation_ratio, o.inversion.max_cancellation_ratio);
        result.diagnostics.inversion_cancellation_warning |= o.inversion.cancellation_warning;
        result.diagnostics.inversion_negative_mass =
            std::min(result.diagnostics.inversion_negative_mass, o.inversion.negative_mass);
    }
    std::stable_sort(result.points.points.begin(), result.points.points.end(),
                     [](const PhasePoint& a, const PhasePoint& b) { return a.theta < b.theta; });
    result.desired_event_rate = rate / config.sweep_settings;

    auto& diag = result.diagnostics;
    double tail = 0.0;
    for (const auto& m : members_of(config.signal)) {
        tail += m.weight * m.state->tail_above(config.order);
    }
    diag.signal_tail = tail;
    diag.reference_tail = config.reference.tail_above(config.order);
    diag.max_total_photons = config.effective_photon_total();
    diag.nonuniform_efficiency = !config.detector.uniform();
    diag.seed = config.seed;
    return result;
}

FockVector shifted_reference(const ExperimentConfig& config, int setting) {
    return phase_shift(config.reference, kReferencePortOffset + setting * config.sweep_step());
}

}  // namespace

void ExperimentConfig::validate() const {
    if (order < 1) {
        throw std::invalid_argument("multiport order N must be at least 1");
    }
    if (sweep_settings < 1) {
        throw std::invalid_argument("sweep_settings must be at least 1");
    }
    if (trials_per_setting < 1) {
        throw std::invalid_argument("trials_per_setting must be at least 1");
    }
    if (!detector.uniform() && static_cast<int>(detector.etas().size()) != order + 1) {
        throw std::invalid_argument("detector model needs one efficiency or one per output port");
    }
    if (max_total_photons != 0 && max_total_photons < order) {
        throw std::invalid_argument("max_total_photons must be at least N");
    }
    if (threads < 0) {
        throw std::invalid_argument("threads must be non-negative");
    }
}

int ExperimentConfig::effective_photon_total() const {
    if (max_total_photons > 0) {
        return max_total_photons;
    }
    const int total = signal_cutoff(signal) + reference.cutoff();
    return std::max(order, std::min(total, kMaxAutoPhotonTotal));
}

double ExperimentConfig::sweep_step() const {
    return kTwoPi / (order + 1) / sweep_settings;
}

ModeTransform multiport_transform(int order) { return dft_transform(order).adjoint(); }

JointCountDistribution ideal_count_distribution(const FockVector& signal,
                                                const FockVector& reference, int order,
                                                int max_total) {
    const int modes = order + 1;
    const ModeTransform transform = multiport_transform(order);
    JointCountDistribution dist{modes, max_total, {}};
    for (int total = 0; total <= max_total; ++total) {
        std::vector<std::pair<Occupation, Complex>> inputs;
        for (int a = std::max(0, total - reference.cutoff()); a <= std::min(total, signal.cutoff());
             ++a) {
            const Complex c = signal[a] * reference[total - a];
            if (c != 0.0) {
                inputs.emplace_back(input_occupation(modes, a, total - a), c);
            }
        }
        if (inputs.empty()) {
            continue;
        }
        for (const auto& out : occupations_with_total(modes, total)) {
            Complex amp = 0.0;
            for (const auto& [in, c] : inputs) {
                amp += c * transition_amplitude(transform, in, out);
            }
            const double p = std::norm(amp);
            if (p > 0.0) {
                dist.probs.emplace(out, p);
            }
        }
    }
    return dist;
}

std::vector<double> ideal_desired_event_probs(const FockVector& signal,
                                              const FockVector& reference, int order) {
    const int modes = order + 1;
    const ModeTransform transform = multiport_transform(order);
    std::vector<double> probs(modes);
    for (int m = 0; m < modes; ++m) {
        const auto out = desired_event(modes, m);
        Complex amp = 0.0;
        for (int a = 0; a <= std::min(order, signal.cutoff()); ++a) {
            const Complex c = signal[a] * reference[order - a];
            if (c != 0.0) {
                amp += c * transition_amplitude(transform, input_occupation(modes, a, order - a), out);
            }
        }
        probs[m] = std::norm(amp);
    }
    return probs;
}

SweepResult run_exact(const ExperimentConfig& config) {
    config.validate();
    const int max_total = config.effective_photon_total();
    const bool needs_full = !config.detector.ideal();
    auto outcomes = run_settings(
        config.sweep_settings, resolve_thread_count(config.threads), [&](int k) {
            SettingOutcome o;
            const FockVector reference = shifted_reference(config, k);
            if (!needs_full) {
                o.event_probs.assign(config.order + 1, 0.0);
                for (const auto& m : members_of(config.signal)) {
                    const auto p = ideal_desired_event_probs(*m.state, reference, config.order);
                    for (size_t i = 0; i < p.size(); ++i) {
                        o.event_probs[i] += m.weight * p[i];
                    }
                }
            } else {
                auto dist = mixed_ideal_distribution(config.signal, reference, config.order, max_total);
                for (const auto& m : members_of(config.signal)) {
                    o.truncated_mass += m.weight * truncated_input_mass(*m.state, reference, max_total);
                }
                dist = apply_efficiency(dist, config.detector);
                if (config.correct_efficiency) {
                    dist = invert_efficiency(dist, config.detector, &o.inversion);
                }
                o.event_probs = desired_probs_from(dist);
            }
            for (double p : o.event_probs) {
                o.desired_rate += p;
            }
            o.y = normalize_counts(o.event_probs);
            return o;
        });
    auto result = assemble(config, outcomes, DistributionSource::kExactSimulated);
    if (!needs_full) {
        result.diagnostics.max_total_photons = config.order;
    }
    return result;
}

SweepResult run_monte_carlo(const ExperimentConfig& config) {
    config.validate();
    const int max_total = config.effective_photon_total();
    const int d = config.order + 1;
    auto outcomes = run_settings(
        config.sweep_settings, resolve_thread_count(config.threads), [&](int k) {
            SettingOutcome o;
            const FockVector reference = shifted_reference(config, k);
            const auto ideal = mixed_ideal_distribution(config.signal, reference, config.order, max_total);
            for (const auto& m : members_of(config.signal)) {
                o.truncated_mass += m.weight * truncated_input_mass(*m.state, reference, max_total);
            }
            std::vector<const CountTuple*> tuples;
            std::vector<double> weights;
            tuples.reserve(ideal.probs.size());
            weights.reserve(ideal.probs.size());
            for (const auto& [counts, p] : ideal.probs) {
                tuples.push_back(&counts);
                weights.push_back(p);
            }
            // Per-setting stream so serial and parallel runs draw identical samples.
            std::seed_seq seq{static_cast<uint32_t>(config.seed & 0xffffffffu),
                              static_cast<uint32_t>(config.seed >> 32),
                              static_cast<uint32_t>(k)};
            std::mt19937_64 gen(seq);
            std::discrete_distribution<size_t> pick(weights.begin(), weights.end());
            std::vector<int64_t> desired(d, 0);
            std::map<CountTuple, int64_t> counted;
            CountTuple sample(d);
            for (int64_t trial = 0; trial < config.trials_per_setting; ++trial) {
                const CountTuple& ideal_counts = *tuples[pick(gen)];
                for (int det = 0; det < d; ++det) {
                    const double eta = config.detector.eta(det);
                    int c = ideal_counts[det];
                    if (eta < 1.0 && c > 0) {
                        c = std::binomial_distribution<int>(c, eta)(gen);
                    }
                    sample[det] = c;
                }
                if (config.correct_efficiency) {
                    ++counted[sample];
                }
                const int idx = desired_event_index(sample);
                if (idx >= 0) {
                    ++desired[idx];
                }
            }
            const double n = static_cast<double>(config.trials_per_setting);
            o.event_probs.resize(d);
            for (int m = 0; m < d; ++m) {
                o.event_probs[m] = static_cast<double>(desired[m]) / n;
            }
            if (config.correct_efficiency) {
                JointCountDistribution freq{d, max_total, {}};
                for (const auto& [counts, c] : counted) {
                    freq.probs.emplace(counts, static_cast<double>(c) / n);
                }
                const auto corrected = invert_efficiency(freq, config.detector, &o.inversion);
                for (int m = 0; m < d; ++m) {
                    o.event_probs[m] = std::max(0.0, corrected.probability(desired_event(d, m)));
                }
            }
            for (double p : o.event_probs) {
                o.desired_rate += p;
            }
            o.y = normalize_counts(o.event_probs);
            o.stderrs = normalized_stderrs(o.event_probs, config.trials_per_setting);
            return o;
        });
    auto result = assemble(config, outcomes, DistributionSource::kMonteCarlo);
    result.diagnostics.rng_algorithm =
        "std::mt19937_64 seeded by std::seed_seq{seed_lo32, seed_hi32, setting}; "
        "std::discrete_distribution + std::binomial_distribution (libstdc++)";
    result.diagnostics.trials_per_setting = config.trials_per_setting;
    return result;
}

ComparisonMetrics compare_distributions(const PhaseDistribution& measured,
                                        const SignalState& truth) {
    ComparisonMetrics metrics;
    if (measured.points.empty()) {
        return metrics;
    }
    double sum_sq = 0.0;
    for (const auto& p : measured.points) {
        const double expected = canonical_density(truth, p.theta);
        const double dev = std::abs(p.value - expected);
        metrics.max_abs_deviation = std::max(metrics.max_abs_deviation, dev);
        sum_sq += dev * dev;
        if (expected > 0.0) {
            metrics.max_rel_deviation = std::max(metrics.max_rel_deviation, dev / expected);
        }
    }
    metrics.rms_deviation = std::sqrt(sum_sq / static_cast<double>(measured.points.size()));
    return metrics;
}

ComparisonMetrics compare_to_canonical(const SweepResult& result, const SignalState& truth) {
    return compare_distributions(result.points, truth);
}

int minimum_point_count(int order) {
    if (order < 1) {
        throw std::invalid_argument("multiport order N must be at least 1");
    }
    return 4 * order;
}

int resolve_thread_count(int requested) {
    int cap = 0;
    if (const char* env = std::getenv("PHASESYNTH_THREADS")) {
        cap = std::atoi(env);
    }
    int threads = requested;
    if (threads <= 0) {
        threads = cap > 0 ? cap : static_cast<int>(std::thread::hardware_concurrency());
    } else if (cap > 0) {
        threads = std::min(threads, cap);
    }
    return std::max(1, threads);
}

}  // namespace phasesynth
