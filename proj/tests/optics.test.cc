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

#include "phasesynth/optics.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.h"

namespace phasesynth {
namespace {

const Complex kI(0.0, 1.0);

double max_amplitude_gap(const MultiModeState& a, const oracle::Poly& b) {
    double worst = 0.0;
    for (const auto& [occ, amp] : b) {
        worst = std::max(worst, std::abs(a.amplitude(occ) - amp));
    }
    for (const auto& [occ, amp] : a.terms()) {
        auto it = b.find(occ);
        worst = std::max(worst, std::abs(amp - (it == b.end() ? Complex(0.0) : it->second)));
    }
    return worst;
}

double max_amplitude_gap(const MultiModeState& a, const MultiModeState& b) {
    return max_amplitude_gap(a, oracle::Poly(b.terms().begin(), b.terms().end()));
}

MultiModeState random_product(std::mt19937_64& rng, const std::vector<int>& cutoffs) {
    std::vector<FockVector> modes;
    for (int c : cutoffs) {
        modes.emplace_back(oracle::random_amplitudes(rng, c));
    }
    return MultiModeState::product(modes);
}

TEST(ModeTransform, BeamSplitterEntries) {
    const Eigen::MatrixXcd m = beam_splitter_matrix().matrix();
    const double s = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(m(0, 0) - s), 0.0, 1e-16);
    EXPECT_NEAR(std::abs(m(0, 1) - kI * s), 0.0, 1e-16);
    EXPECT_NEAR(std::abs(m(1, 0) - kI * s), 0.0, 1e-16);
    EXPECT_NEAR(std::abs(m(1, 1) - s), 0.0, 1e-16);
}

TEST(ModeTransform, RejectsNonUnitaryAndNonSquare) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    m(0, 1) = 1e-9;
    EXPECT_THROW(ModeTransform{m}, std::invalid_argument);
    EXPECT_THROW(ModeTransform(Eigen::MatrixXcd::Identity(2, 3)), std::invalid_argument);
    EXPECT_THROW(ModeTransform(Eigen::MatrixXcd(0, 0)), std::invalid_argument);
}

TEST(ModeTransform, GlobalPhaseAndAdjoint) {
    const ModeTransform t(dft_transform(3).matrix(), 0.4);
    EXPECT_NEAR((t.full_matrix() - std::polar(1.0, 0.4) * t.matrix()).cwiseAbs().maxCoeff(), 0.0,
                1e-16);
    const ModeTransform a = t.adjoint();
    EXPECT_NEAR((a.full_matrix() * t.full_matrix() - Eigen::MatrixXcd::Identity(4, 4))
                    .cwiseAbs()
                    .maxCoeff(),
                0.0, 1e-15);
}

TEST(Dft, Order3IsPowersOfMinusI) {
    const Eigen::MatrixXcd m = dft_transform(3).matrix();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            EXPECT_NEAR(std::abs(m(i, j) - std::pow(-kI, i * j) / 2.0), 0.0, 1e-15);
        }
    }
}

TEST(Dft, GeneralOrdersMatchOracleAndAreUnitary) {
    for (int n = 1; n <= 12; ++n) {
        const auto t = dft_transform(n);
        EXPECT_LT(t.unitarity_residual(), 1e-13) << n;
        EXPECT_LT((t.matrix() - oracle::dft(n)).cwiseAbs().maxCoeff(), 1e-13) << n;
    }
    EXPECT_THROW(dft_transform(0), std::invalid_argument);
}

TEST(EightPort, ComposesToDftUpToOutputPhases) {
    const auto composed = compose(eight_port_network(0.0));
    EXPECT_LT(composed.unitarity_residual(), 1e-13);
    EXPECT_LT(output_phase_residual(composed.matrix(), dft_transform(3).matrix()), 1e-12);
    const auto bare = compose(eight_port_network_without_output_shifters(0.0));
    EXPECT_LT(output_phase_residual(bare.matrix(), dft_transform(3).matrix()), 1e-12);
}

TEST(EightPort, OutputShiftersDoNotChangeCounts) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const auto in = random_product(rng, {3, 3, 1, 1});
        const double ref = 0.5 * trial;
        const auto a = evolve(in, compose(eight_port_network(ref)));
        const auto b = evolve(in, compose(eight_port_network_without_output_shifters(ref)));
        for (const auto& [occ, amp] : a.terms()) {
            EXPECT_NEAR(std::norm(amp), std::norm(b.amplitude(occ)), 1e-14);
        }
    }
}

TEST(EightPort, ReferencePhaseActsOnPortOne) {
    const auto with = compose(eight_port_network(0.7)).matrix();
    const auto without = compose(eight_port_network(0.0)).matrix();
    EXPECT_LT((with.col(1) - std::polar(1.0, 0.7) * without.col(1)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((with.col(0) - without.col(0)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Network, ValidatesModes) {
    EXPECT_THROW(Network(2, {BeamSplitter{0, 2}}), std::invalid_argument);
    EXPECT_THROW(Network(2, {BeamSplitter{1, 1}}), std::invalid_argument);
    EXPECT_THROW(Network(2, {PhaseShifter{-1, 0.1}}), std::invalid_argument);
    EXPECT_THROW(Network(2, {Swap{0, 0}}), std::invalid_argument);
    EXPECT_THROW(Network(0, {}), std::invalid_argument);
    EXPECT_EQ(compose(Network(3, {})).matrix(), Eigen::MatrixXcd::Identity(3, 3));
}

TEST(Network, ElementMatrices) {
    const auto swap = element_matrix(Swap{0, 2}, 3);
    EXPECT_EQ(swap(2, 0), Complex(1.0));
    EXPECT_EQ(swap(1, 1), Complex(1.0));
    EXPECT_EQ(swap(0, 0), Complex(0.0));
    const auto ps = element_matrix(PhaseShifter{1, 0.3}, 2);
    EXPECT_NEAR(std::abs(ps(1, 1) - std::polar(1.0, 0.3)), 0.0, 1e-16);
    // Later elements act after earlier ones.
    const auto m = compose(Network(2, {PhaseShifter{0, 0.5}, BeamSplitter{0, 1}})).matrix();
    const Eigen::MatrixXcd expected =
        beam_splitter_matrix().matrix() * element_matrix(PhaseShifter{0, 0.5}, 2);
    EXPECT_LT((m - expected).cwiseAbs().maxCoeff(), 1e-16);
}

TEST(Permanent, MatchesBruteForce) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal;
    for (int n = 1; n <= 8; ++n) {
        Eigen::MatrixXcd m(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                m(i, j) = {normal(rng), normal(rng)};
            }
        }
        const Complex expected = oracle::permanent(m);
        EXPECT_NEAR(std::abs(permanent(m) - expected), 0.0, 1e-11 * std::max(1.0, std::abs(expected)))
            << n;
    }
    EXPECT_EQ(permanent(Eigen::MatrixXcd(0, 0)), Complex(1.0));
    EXPECT_THROW(permanent(Eigen::MatrixXcd::Zero(2, 3)), std::invalid_argument);
}

TEST(Permanent, KnownValues) {
    // per(J_n) = n! for the all-ones matrix.
    for (int n = 1; n <= 10; ++n) {
        EXPECT_NEAR(permanent(Eigen::MatrixXcd::Ones(n, n)).real(), std::tgamma(n + 1.0),
                    1e-9 * std::tgamma(n + 1.0));
    }
    EXPECT_NEAR(std::abs(permanent(Eigen::MatrixXcd::Identity(6, 6)) - 1.0), 0.0, 1e-14);
}

TEST(Permanent, MultiplicitiesMatchExpandedMatrix) {
    std::mt19937_64 rng(8);
    const auto u = oracle::random_unitary(rng, 4);
    const std::vector<int> rows = {2, 0, 1, 2};
    const std::vector<int> cols = {1, 3, 0, 1};
    Eigen::MatrixXcd expanded(5, 5);
    std::vector<int> ri;
    std::vector<int> ci;
    for (int i = 0; i < 4; ++i) {
        ri.insert(ri.end(), rows[i], i);
        ci.insert(ci.end(), cols[i], i);
    }
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            expanded(i, j) = u(ri[i], ci[j]);
        }
    }
    EXPECT_NEAR(std::abs(permanent_with_multiplicities(u, rows, cols) - oracle::permanent(expanded)),
                0.0, 1e-13);
}

TEST(TransitionAmplitude, HongOuMandel) {
    const auto bs = beam_splitter_matrix();
    EXPECT_NEAR(std::abs(transition_amplitude(bs, {1, 1}, {1, 1})), 0.0, 1e-16);
    EXPECT_NEAR(std::norm(transition_amplitude(bs, {1, 1}, {2, 0})), 0.5, 1e-15);
    EXPECT_NEAR(std::norm(transition_amplitude(bs, {1, 1}, {0, 2})), 0.5, 1e-15);
    EXPECT_EQ(transition_amplitude(bs, {1, 1}, {1, 0}), Complex(0.0));
    EXPECT_THROW(transition_amplitude(bs, {1, 1, 0}, {1, 1, 0}), std::invalid_argument);
}

TEST(TransitionAmplitude, GlobalPhaseScalesWithPhotonNumber) {
    const ModeTransform plain(dft_transform(2).matrix());
    const ModeTransform shifted(dft_transform(2).matrix(), 0.3);
    const Complex a = transition_amplitude(plain, {2, 1, 0}, {1, 1, 1});
    const Complex b = transition_amplitude(shifted, {2, 1, 0}, {1, 1, 1});
    EXPECT_NEAR(std::abs(b - std::polar(1.0, 0.9) * a), 0.0, 1e-15);
}

TEST(Occupations, CountAndOrder) {
    const auto occ = occupations_with_total(4, 3);
    EXPECT_EQ(occ.size(), 20u);
    EXPECT_TRUE(std::is_sorted(occ.begin(), occ.end()));
    for (const auto& o : occ) {
        EXPECT_EQ(o[0] + o[1] + o[2] + o[3], 3);
    }
    EXPECT_EQ(occupations_with_total(3, 0).size(), 1u);
}

TEST(MultiModeState, ChecksShapeAndNorm) {
    EXPECT_THROW(MultiModeState(2, {{{1}, 1.0}}), std::invalid_argument);
    EXPECT_THROW(MultiModeState(2, {{{1, -1}, 1.0}}), std::invalid_argument);
    EXPECT_THROW(MultiModeState(1, {{{0}, 0.5}}), std::invalid_argument);
    const MultiModeState s(2, {{{1, 0}, 0.6}, {{0, 2}, Complex(0.0, 0.8)}});
    EXPECT_EQ(s.max_total_photons(), 2);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
}

TEST(MultiModeState, ProductDropsTinyTerms) {
    const std::vector<FockVector> modes = {FockVector({1.0, 1e-9}), number_state(1)};
    EXPECT_EQ(MultiModeState::product(modes).terms().size(), 2u);
    EXPECT_EQ(MultiModeState::product(modes, 1e-6).terms().size(), 1u);
}

TEST(Evolve, MatchesPolynomialOracleOnRandomUnitaries) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 6; ++trial) {
        const auto u = oracle::random_unitary(rng, 4);
        std::vector<std::vector<Complex>> amps = {oracle::random_amplitudes(rng, 3),
                                                  oracle::random_amplitudes(rng, 2),
                                                  {1.0},
                                                  oracle::random_amplitudes(rng, 1)};
        std::vector<FockVector> modes;
        for (const auto& a : amps) {
            modes.emplace_back(a);
        }
        const auto out = evolve(MultiModeState::product(modes), ModeTransform(u));
        EXPECT_LT(max_amplitude_gap(out, oracle::evolve(oracle::product(amps), u)), 1e-13);
        EXPECT_NEAR(out.norm_squared(), 1.0, 1e-12);
    }
}

TEST(Evolve, EnginesAgreeOnLargeSectors) {
    // Photon totals up to 16 stress the multiplicity permanent.
    std::mt19937_64 rng(37);
    const std::vector<FockVector> modes = {FockVector(oracle::random_amplitudes(rng, 8)),
                                           binomial_state(8), number_state(0), number_state(0)};
    const auto in = MultiModeState::product(modes);
    const Network net = eight_port_network(0.4);
    const auto a = evolve(in, compose(net), 16);
    const auto b = evolve_sequential(in, net, 16);
    EXPECT_LT(max_amplitude_gap(a, b), 1e-11);
}

TEST(Evolve, EnginesAgreeOnRandomNetworks) {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> mode(0, 4);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<NetworkElement> elements;
        for (int k = 0; k < 12; ++k) {
            int a = mode(rng);
            int b = mode(rng);
            if (a == b) {
                elements.push_back(PhaseShifter{a, angle(rng)});
            } else if (k % 3 == 0) {
                elements.push_back(Swap{a, b});
            } else {
                elements.push_back(BeamSplitter{a, b});
            }
        }
        const Network net(5, elements);
        const auto in = random_product(rng, {2, 2, 1, 0, 1});
        EXPECT_LT(max_amplitude_gap(evolve(in, compose(net)), evolve_sequential(in, net)), 1e-12);
    }
}

TEST(Evolve, CompositionProperty) {
    std::mt19937_64 rng(31);
    const auto u1 = oracle::random_unitary(rng, 3);
    const auto u2 = oracle::random_unitary(rng, 3);
    const auto in = random_product(rng, {2, 2, 1});
    const auto step = evolve(evolve(in, ModeTransform(u1)), ModeTransform(u2));
    const auto once = evolve(in, ModeTransform(u2 * u1));
    EXPECT_LT(max_amplitude_gap(step, once), 1e-13);
    const auto back = evolve(once, ModeTransform(u2 * u1).adjoint());
    EXPECT_LT(max_amplitude_gap(back, in), 1e-13);
}

TEST(Evolve, PhotonLimitAndShapeErrors) {
    const auto in = MultiModeState::product(std::vector<FockVector>{number_state(7), number_state(6)});
    EXPECT_THROW(evolve(in, beam_splitter_matrix()), std::invalid_argument);
    EXPECT_NO_THROW(evolve(in, beam_splitter_matrix(), 13));
    EXPECT_THROW(evolve(in, dft_transform(3)), std::invalid_argument);
    EXPECT_THROW(evolve_sequential(in, eight_port_network(0.0), 20), std::invalid_argument);
}

}  // namespace
}  // namespace phasesynth
