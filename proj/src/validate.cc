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

#include "phasesynth/validate.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace phasesynth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct FaultEntry {
    const char* name;
    Fault fault;
};

constexpr FaultEntry kFaults[] = {
    {"unitarity", Fault::kUnitarity},   {"dft", Fault::kDftEquivalence},
    {"engine", Fault::kEngineEquivalence}, {"event_rate", Fault::kEventRate},
    {"bernoulli", Fault::kBernoulli},   {"parseval", Fault::kParseval},
};

FockVector random_state(std::mt19937_64& rng, int cutoff) {
    std::normal_distribution<double> normal;
    std::vector<Complex> amps(cutoff + 1);
    for (auto& a : amps) {
        a = {normal(rng), normal(rng)};
    }
    return FockVector(std::move(amps));
}

CheckResult make(std::string name, double residual, double tolerance, std::string detail) {
    return {std::move(name), residual <= tolerance, residual, tolerance, std::move(detail)};
}

CheckResult check_unitarity(Fault fault) {
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n) {
        worst = std::max(worst, dft_transform(n).unitarity_residual());
    }
    worst = std::max(worst, beam_splitter_matrix().unitarity_residual());
    Eigen::MatrixXcd u = compose(eight_port_network(0.3)).matrix();
    if (fault == Fault::kUnitarity) {
        u(0, 0) *= 1.0 + 1e-6;
    }
    const auto eye = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    worst = std::max(worst, (u.adjoint() * u - eye).cwiseAbs().maxCoeff());
    return make("unitarity", worst, 1e-12, "DFT orders 1-6, beam splitter, eight-port network");
}

CheckResult check_dft(Fault fault) {
    Network network = eight_port_network(0.0);
    if (fault == Fault::kDftEquivalence) {
        std::vector<NetworkElement> elements(network.elements().begin(), network.elements().end());
        elements.erase(elements.begin() + 4);  // drop the internal shifter
        network = Network(4, std::move(elements));
    }
    const double residual =
        output_phase_residual(compose(network).matrix(), dft_transform(3).matrix());
    return make("dft_equivalence", residual, 1e-12,
                "eight-port network vs (-i)^(ij)/2 up to output phases");
}

CheckResult check_engines(Fault fault) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const std::vector<FockVector> modes = {random_state(rng, 3), random_state(rng, 3),
                                               number_state(0), number_state(0)};
        const auto input = MultiModeState::product(modes);
        const Network network = eight_port_network(angle(rng));
        const auto a = evolve(input, compose(network));
        const auto b = evolve_sequential(input, network);
        for (const auto& [occ, amp] : a.terms()) {
            Complex other = b.amplitude(occ);
            if (fault == Fault::kEngineEquivalence && trial == 0) {
                other *= 1.0 + 1e-8;
            }
            worst = std::max(worst, std::abs(amp - other));
        }
        for (const auto& [occ, amp] : b.terms()) {
            worst = std::max(worst, std::abs(amp - a.amplitude(occ)));
        }
    }
    return make("engine_equivalence", worst, 1e-11,
                "permanent vs sequential beam-splitter engine, random inputs");
}

CheckResult check_event_rate(Fault fault) {
    const FockVector reference = binomial_state(3);
    const double three_photon = std::norm(reference[3]);
    auto probs = ideal_desired_event_probs(number_state(0), reference, 3);
    if (fault == Fault::kEventRate) {
        probs[0] *= 1.01;
    }
    double residual = std::abs(three_photon - 0.125);
    double total = 0.0;
    for (double p : probs) {
        residual = std::max(residual, std::abs(p / three_photon - 3.0 / 32.0));
        total += p;
    }
    residual = std::max(residual, std::abs(total - 3.0 / 64.0));
    return make("event_rate", residual, 1e-12,
                "binomial(3) reference, vacuum signal: 1/8, 3/32 per event, 3/64 overall");
}

CheckResult check_bernoulli(Fault fault) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    constexpr int kCutoff = 6;
    double worst = 0.0;
    for (double eta : {0.5, 0.7, 0.9}) {
        JointCountDistribution dist;
        dist.num_detectors = 4;
        dist.cutoff = kCutoff;
        double total = 0.0;
        for (int d = 0; d <= kCutoff; ++d) {
            for (const auto& occ : occupations_with_total(4, d)) {
                const double p = uniform(rng);
                dist.probs[occ] = p;
                total += p;
            }
        }
        for (auto& [occ, p] : dist.probs) {
            p /= total;
        }
        const auto counted = apply_efficiency(dist, DetectorModel(eta));
        const double back_eta = fault == Fault::kBernoulli ? eta + 0.01 : eta;
        const auto restored = invert_efficiency(counted, DetectorModel(back_eta));
        for (const auto& [occ, p] : dist.probs) {
            worst = std::max(worst, std::abs(restored.probability(occ) - p));
        }
    }
    return make("bernoulli_round_trip", worst, 1e-9,
                "invert(apply(P)) = P at eta 0.5, 0.7, 0.9, cutoff 6");
}

CheckResult check_parseval(Fault fault) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    const auto grid = uniform_theta_grid(10000);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const FockVector state = random_state(rng, 6);
        const double shift = angle(rng);
        const FockVector rotated = phase_shift(state, fault == Fault::kParseval ? 0.0 : shift);
        worst = std::max(worst, std::abs(rotated.norm_squared() - state.norm_squared()));
        for (int k = 0; k < 64; ++k) {
            const double theta = kTwoPi * k / 64.0;
            worst = std::max(worst, std::abs(canonical_density(rotated, theta + shift) -
                                             canonical_density(state, theta)));
        }
        const double integral = canonical_distribution(SignalState(rotated), grid).periodic_trapezoid();
        worst = std::max(worst, std::abs(integral - 1.0));
    }
    return make("parseval", worst, 1e-12,
                "norm and density invariant under rotation; density integrates to 1");
}

}  // namespace

std::optional<Fault> parse_fault(const std::string& name) {
    for (const auto& entry : kFaults) {
        if (name == entry.name) {
            return entry.fault;
        }
    }
    return std::nullopt;
}

std::vector<std::string> fault_names() {
    std::vector<std::string> names;
    for (const auto& entry : kFaults) {
        names.emplace_back(entry.name);
    }
    return names;
}

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport run_validation(Fault fault) {
    ValidationReport report;
    report.checks.push_back(check_unitarity(fault));
    report.checks.push_back(check_dft(fault));
    report.checks.push_back(check_engines(fault));
    report.checks.push_back(check_event_rate(fault));
    report.checks.push_back(check_bernoulli(fault));
    report.checks.push_back(check_parseval(fault));
    return report;
}

Json report_to_json(const ValidationReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"residual", c.residual},
                          {"tolerance", c.tolerance},
                          {"detail", c.detail}});
    }
    return {{"passed", report.passed()}, {"checks", checks}};
}

}  // namespace phasesynth
