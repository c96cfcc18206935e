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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace phasesynth {

namespace {

constexpr double kUnitarityTolerance = 1e-12;
constexpr Complex kI{0.0, 1.0};

double log_factorial(int n) { return std::lgamma(n + 1.0); }

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    return std::round(std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k)));
}

int total_of(const Occupation& occ) { return std::accumulate(occ.begin(), occ.end(), 0); }

void check_mode(int mode, int num_modes) {
    if (mode < 0 || mode >= num_modes) {
        throw std::invalid_argument("mode index " + std::to_string(mode) + " out of range for " +
                                    std::to_string(num_modes) + " modes");
    }
}

void check_photon_limit(const MultiModeState& state, int photon_limit) {
    const int total = state.max_total_photons();
    if (total > photon_limit) {
        throw std::invalid_argument("state carries " + std::to_string(total) +
                                    " photons, above the evolution limit of " +
                                    std::to_string(photon_limit));
    }
}

Complex permanent_direct(const Eigen::MatrixXcd& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Complex sum = 0.0;
    do {
        Complex prod = 1.0;
        for (int r = 0; r < n; ++r) {
            prod *= m(r, perm[r]);
        }
        sum += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

// Ryser's formula with Gray-code subset enumeration.
Complex permanent_ryser(const Eigen::MatrixXcd& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<Complex> row_sums(n, 0.0);
    Complex total = 0.0;
    const uint64_t subsets = uint64_t{1} << n;
    uint64_t gray_prev = 0;
    for (uint64_t k = 1; k < subsets; ++k) {
        const uint64_t gray = k ^ (k >> 1);
        const uint64_t changed = gray ^ gray_prev;
        const int col = std::countr_zero(changed);
        const double sign = (gray & changed) ? 1.0 : -1.0;
        for (int r = 0; r < n; ++r) {
            row_sums[r] += sign * m(r, col);
        }
        Complex prod = 1.0;
        for (int r = 0; r < n; ++r) {
            prod *= row_sums[r];
        }
        const int size = std::popcount(gray);
        total += ((n - size) % 2 == 0) ? prod : -prod;
        gray_prev = gray;
    }
    return total;
}

Eigen::MatrixXcd expand_submatrix(const Eigen::MatrixXcd& u, std::span<const int> row_mult,
                                  std::span<const int> col_mult) {
    std::vector<int> rows;
    std::vector<int> cols;
    for (int j = 0; j < static_cast<int>(row_mult.size()); ++j) {
        rows.insert(rows.end(), row_mult[j], j);
    }
    for (int i = 0; i < static_cast<int>(col_mult.size()); ++i) {
        cols.insert(cols.end(), col_mult[i], i);
    }
    Eigen::MatrixXcd sub(rows.size(), cols.size());
    for (size_t r = 0; r < rows.size(); ++r) {
        for (size_t c = 0; c < cols.size(); ++c) {
            sub(r, c) = u(rows[r], cols[c]);
        }
    }
    return sub;
}

void apply_beam_splitter(MultiModeState::Terms& out, const Occupation& occ, Complex amp, int a,
                         int b) {
    const int na = occ[a];
    const int nb = occ[b];
    const int total = na + nb;
    const double scale = std::pow(2.0, -0.5 * total);
    for (int p = 0; p <= total; ++p) {
        const int q = total - p;
        Complex coeff = 0.0;
        for (int k = std::max(0, p - nb); k <= std::min(na, p); ++k) {
            const int l = p - k;
            const int i_power = (na - k + l) % 4;
            static const Complex kIPowers[4] = {1.0, kI, -1.0, -kI};
            coeff += binomial(na, k) * binomial(nb, l) * kIPowers[i_power];
        }
        if (coeff == 0.0) {
            continue;
        }
        const double norm = std::exp(0.5 * (log_factorial(p) + log_factorial(q) -
                                             log_factorial(na) - log_factorial(nb)));
        Occupation next = occ;
        next[a] = p;
        next[b] = q;
        out[next] += amp * coeff * scale * norm;
    }
}

}  // namespace

ModeTransform::ModeTransform(Eigen::MatrixXcd matrix, double global_phase)
    : matrix_(std::move(matrix)), global_phase_(global_phase) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
        throw std::invalid_argument("mode transform must be a non-empty square matrix");
    }
    const double residual = unitarity_residual();
    if (!(residual < kUnitarityTolerance)) {
        throw std::invalid_argument("mode transform is not unitary (residual " +
                                    std::to_string(residual) + ")");
    }
}

Eigen::MatrixXcd ModeTransform::full_matrix() const {
    return std::polar(1.0, global_phase_) * matrix_;
}

ModeTransform ModeTransform::adjoint() const {
    return ModeTransform(matrix_.adjoint(), -global_phase_);
}

double ModeTransform::unitarity_residual() const {
    const auto n = matrix_.rows();
    return (matrix_.adjoint() * matrix_ - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

Network::Network(int num_modes, std::vector<NetworkElement> elements)
    : num_modes_(num_modes), elements_(std::move(elements)) {
    if (num_modes < 1) {
        throw std::invalid_argument("network needs at least one mode");
    }
    for (const auto& e : elements_) {
        std::visit(
            [&](const auto& el) {
                using T = std::decay_t<decltype(el)>;
                if constexpr (std::is_same_v<T, PhaseShifter>) {
                    check_mode(el.mode, num_modes_);
                } else {
                    check_mode(el.mode_a, num_modes_);
                    check_mode(el.mode_b, num_modes_);
                    if (el.mode_a == el.mode_b) {
                        throw std::invalid_argument("two-mode element needs distinct modes");
                    }
                }
            },
            e);
    }
}

MultiModeState::MultiModeState(int num_modes, Terms terms)
    : num_modes_(num_modes), terms_(std::move(terms)) {
    for (const auto& [occ, amp] : terms_) {
        if (static_cast<int>(occ.size()) != num_modes_) {
            throw std::invalid_argument("occupation tuple length does not match mode count");
        }
        if (std::any_of(occ.begin(), occ.end(), [](int n) { return n < 0; })) {
            throw std::invalid_argument("occupation numbers must be non-negative");
        }
    }
    const double n2 = norm_squared();
    if (std::abs(n2 - 1.0) > 1e-9) {
        throw std::invalid_argument("multimode state is not normalized (norm^2 = " +
                                    std::to_string(n2) + ")");
    }
}

MultiModeState MultiModeState::product(std::span<const FockVector> modes, double drop_below) {
    Terms terms{{Occupation{}, Complex{1.0}}};
    for (const auto& mode : modes) {
        Terms next;
        for (const auto& [occ, amp] : terms) {
            for (int n = 0; n <= mode.cutoff(); ++n) {
                const Complex c = amp * mode[n];
                if (std::abs(c) <= drop_below || c == 0.0) {
                    continue;
                }
                Occupation o = occ;
                o.push_back(n);
                next.emplace(std::move(o), c);
            }
        }
        terms = std::move(next);
    }
    // Renormalize to absorb dropped terms.
    double n2 = 0.0;
    for (const auto& [occ, amp] : terms) {
        n2 += std::norm(amp);
    }
    for (auto& [occ, amp] : terms) {
        amp /= std::sqrt(n2);
    }
    return MultiModeState(static_cast<int>(modes.size()), std::move(terms));
}

Complex MultiModeState::amplitude(const Occupation& occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? Complex{0.0} : it->second;
}

double MultiModeState::norm_squared() const {
    double s = 0.0;
    for (const auto& [occ, amp] : terms_) {
        s += std::norm(amp);
    }
    return s;
}

int MultiModeState::max_total_photons() const {
    int m = 0;
    for (const auto& [occ, amp] : terms_) {
        m = std::max(m, total_of(occ));
    }
    return m;
}

ModeTransform beam_splitter_matrix() {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd m(2, 2);
    m << s, kI * s, kI * s, s;
    return ModeTransform(m);
}

ModeTransform dft_transform(int n) {
    if (n < 1) {
        throw std::invalid_argument("DFT multiport order N must be at least 1");
    }
    const int d = n + 1;
    Eigen::MatrixXcd m(d, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            // Reduce ij mod d first so large orders keep full angle precision.
            const int k = (i * j) % d;
            m(i, j) = std::polar(scale, -2.0 * std::numbers::pi * k / d);
        }
    }
    return ModeTransform(m);
}

namespace {

std::vector<NetworkElement> eight_port_core(double ref_phase) {
    constexpr double kQuarter = std::numbers::pi / 2;
    return {
        PhaseShifter{1, kQuarter + ref_phase},  // reference input
        PhaseShifter{2, kQuarter},              // vacuum input, convenience only
        BeamSplitter{0, 2},
        BeamSplitter{1, 3},
        PhaseShifter{1, kQuarter},  // internal -i shifter
        BeamSplitter{0, 3},
        BeamSplitter{1, 2},
        Swap{0, 1},  // detector labelling
    };
}

}  // namespace

Network eight_port_network(double ref_phase) {
    auto elements = eight_port_core(ref_phase);
    elements.push_back(PhaseShifter{1, std::numbers::pi});
    elements.push_back(PhaseShifter{2, std::numbers::pi / 2});
    elements.push_back(PhaseShifter{3, std::numbers::pi / 2});
    return Network(4, std::move(elements));
}

Network eight_port_network_without_output_shifters(double ref_phase) {
    return Network(4, eight_port_core(ref_phase));
}

Eigen::MatrixXcd element_matrix(const NetworkElement& element, int num_modes) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(num_modes, num_modes);
    std::visit(
        [&](const auto& el) {
            using T = std::decay_t<decltype(el)>;
            if constexpr (std::is_same_v<T, BeamSplitter>) {
                const Eigen::MatrixXcd bs = beam_splitter_matrix().matrix();
                m(el.mode_a, el.mode_a) = bs(0, 0);
                m(el.mode_b, el.mode_a) = bs(1, 0);
                m(el.mode_a, el.mode_b) = bs(0, 1);
                m(el.mode_b, el.mode_b) = bs(1, 1);
            } else if constexpr (std::is_same_v<T, PhaseShifter>) {
                m(el.mode, el.mode) = std::polar(1.0, el.theta);
            } else {
                m(el.mode_a, el.mode_a) = 0.0;
                m(el.mode_b, el.mode_b) = 0.0;
                m(el.mode_a, el.mode_b) = 1.0;
                m(el.mode_b, el.mode_a) = 1.0;
            }
        },
        element);
    return m;
}

ModeTransform compose(const Network& network) {
    const int n = network.num_modes();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
    for (const auto& e : network.elements()) {
        m = element_matrix(e, n) * m;
    }
    return ModeTransform(m);
}

double output_phase_residual(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("matrix shapes differ");
    }
    double worst = 0.0;
    for (int r = 0; r < a.rows(); ++r) {
        const Complex overlap = (a.row(r).conjugate().cwiseProduct(b.row(r))).sum();
        const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
        worst = std::max(worst, (phase * a.row(r) - b.row(r)).cwiseAbs().maxCoeff());
    }
    return worst;
}

Complex permanent(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("permanent needs a square matrix");
    }
    if (m.rows() == 0) {
        return 1.0;
    }
    if (m.rows() <= 4) {
        return permanent_direct(m);
    }
    if (m.rows() > 40) {
        throw std::invalid_argument("permanent dimension above 40 is not supported");
    }
    return permanent_ryser(m);
}

Complex permanent_with_multiplicities(const Eigen::MatrixXcd& u, std::span<const int> row_mult,
                                      std::span<const int> col_mult) {
    const int rows_total = std::accumulate(row_mult.begin(), row_mult.end(), 0);
    const int cols_total = std::accumulate(col_mult.begin(), col_mult.end(), 0);
    if (rows_total != cols_total) {
        return 0.0;
    }
    if (rows_total <= 4) {
        return permanent(expand_submatrix(u, row_mult, col_mult));
    }
    // Glynn's formula over column classes: s_i of the col_mult[i] copies of column i carry
    // delta = -1, C(col_mult[i], s_i) ways; the first copy of the first class is pinned
    // to +1. Each row sum is raised to its multiplicity. Accumulating in long double
    // keeps large sectors near full double precision.
    using Wide = std::complex<long double>;
    std::vector<int> cls;
    for (int i = 0; i < static_cast<int>(col_mult.size()); ++i) {
        if (col_mult[i] > 0) {
            cls.push_back(i);
        }
    }
    std::vector<int> active_rows;
    for (int j = 0; j < static_cast<int>(row_mult.size()); ++j) {
        if (row_mult[j] > 0) {
            active_rows.push_back(j);
        }
    }
    std::vector<int> free(cls.size());
    for (size_t c = 0; c < cls.size(); ++c) {
        free[c] = col_mult[cls[c]] - (c == 0 ? 1 : 0);
    }
    std::vector<int> flips(cls.size(), 0);
    Wide total = 0.0L;
    while (true) {
        long double weight = 1.0L;
        int flipped = 0;
        for (size_t c = 0; c < cls.size(); ++c) {
            weight *= binomial(free[c], flips[c]);
            flipped += flips[c];
        }
        Wide prod = 1.0L;
        for (int j : active_rows) {
            Wide row_sum = 0.0L;
            for (size_t c = 0; c < cls.size(); ++c) {
                const Complex entry = u(j, cls[c]);
                row_sum += static_cast<long double>(col_mult[cls[c]] - 2 * flips[c]) *
                           Wide(entry.real(), entry.imag());
            }
            for (int r = 0; r < row_mult[j]; ++r) {
                prod *= row_sum;
            }
        }
        total += (flipped % 2 == 0 ? weight : -weight) * prod;
        size_t pos = 0;
        while (pos < flips.size() && flips[pos] == free[pos]) {
            flips[pos] = 0;
            ++pos;
        }
        if (pos == flips.size()) {
            break;
        }
        ++flips[pos];
    }
    total /= std::ldexp(1.0L, rows_total - 1);
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

Complex transition_amplitude(const ModeTransform& transform, const Occupation& in,
                             const Occupation& out) {
    const int modes = transform.num_modes();
    if (static_cast<int>(in.size()) != modes || static_cast<int>(out.size()) != modes) {
        throw std::invalid_argument("occupation length does not match transform size");
    }
    if (total_of(in) != total_of(out)) {
        return 0.0;
    }
    double log_norm = 0.0;
    for (int i = 0; i < modes; ++i) {
        log_norm += log_factorial(in[i]) + log_factorial(out[i]);
    }
    const Complex per = permanent_with_multiplicities(transform.matrix(), out, in);
    const Complex phase = std::polar(1.0, transform.global_phase() * total_of(in));
    return phase * per * std::exp(-0.5 * log_norm);
}

std::vector<Occupation> occupations_with_total(int num_modes, int total) {
    std::vector<Occupation> result;
    Occupation occ(num_modes, 0);
    // Recursive fill: mode m takes a value, the rest distributes the remainder.
    auto fill = [&](auto&& self, int mode, int remaining) -> void {
        if (mode == num_modes - 1) {
            occ[mode] = remaining;
            result.push_back(occ);
            return;
        }
        for (int n = remaining; n >= 0; --n) {
            occ[mode] = n;
            self(self, mode + 1, remaining - n);
        }
    };
    if (num_modes > 0) {
        fill(fill, 0, total);
    }
    std::reverse(result.begin(), result.end());
    return result;
}

MultiModeState evolve(const MultiModeState& state, const ModeTransform& transform,
                      int photon_limit) {
    if (state.num_modes() != transform.num_modes()) {
        throw std::invalid_argument("state and transform mode counts differ");
    }
    check_photon_limit(state, photon_limit);
    std::map<int, std::vector<Occupation>> sectors;
    MultiModeState::Terms out;
    for (const auto& [in_occ, in_amp] : state.terms()) {
        const int total = total_of(in_occ);
        auto it = sectors.find(total);
        if (it == sectors.end()) {
            it = sectors.emplace(total, occupations_with_total(state.num_modes(), total)).first;
        }
        for (const auto& out_occ : it->second) {
            const Complex a = transition_amplitude(transform, in_occ, out_occ);
            if (a != 0.0) {
                out[out_occ] += in_amp * a;
            }
        }
    }
    return MultiModeState(state.num_modes(), std::move(out));
}

MultiModeState evolve_sequential(const MultiModeState& state, const Network& network,
                                 int photon_limit) {
    if (state.num_modes() != network.num_modes()) {
        throw std::invalid_argument("state and network mode counts differ");
    }
    check_photon_limit(state, photon_limit);
    MultiModeState::Terms terms = state.terms();
    for (const auto& element : network.elements()) {
        MultiModeState::Terms next;
        std::visit(
            [&](const auto& el) {
                using T = std::decay_t<decltype(el)>;
                for (const auto& [occ, amp] : terms) {
                    if constexpr (std::is_same_v<T, BeamSplitter>) {
                        apply_beam_splitter(next, occ, amp, el.mode_a, el.mode_b);
                    } else if constexpr (std::is_same_v<T, PhaseShifter>) {
                        next[occ] += amp * std::polar(1.0, occ[el.mode] * el.theta);
                    } else {
                        Occupation swapped = occ;
                        std::swap(swapped[el.mode_a], swapped[el.mode_b]);
                        next[swapped] += amp;
                    }
                }
            },
            element);
        terms = std::move(next);
    }
    return MultiModeState(state.num_modes(), std::move(terms));
}

}  // namespace phasesynth
