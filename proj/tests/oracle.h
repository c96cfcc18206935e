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

// Slow, independent reference implementations used only by tests.

#ifndef PHASESYNTH_TESTS_ORACLE_H
#define PHASESYNTH_TESTS_ORACLE_H

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Occ = std::vector<int>;
using Poly = std::map<Occ, Complex>;

inline double factorial(int n) { return std::tgamma(n + 1.0); }

/// Sum over all permutations.
inline Complex permanent(const Eigen::MatrixXcd& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Complex total = 0.0;
    do {
        Complex prod = 1.0;
        for (int i = 0; i < n; ++i) {
            prod *= m(i, perm[i]);
        }
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Output state of a multimode input written as a polynomial in creation operators:
/// each input a_in^dag is replaced by sum_out U(out, in) b_out^dag, the product is
/// expanded monomial by monomial, and coefficients are converted to amplitudes.
inline Poly evolve(const Poly& input, const Eigen::MatrixXcd& u) {
    const int modes = static_cast<int>(u.rows());
    Poly out;
    for (const auto& [occ, amp] : input) {
        Poly poly = {{Occ(modes, 0), amp}};
        double norm = 1.0;
        for (int in = 0; in < modes; ++in) {
            norm *= factorial(occ[in]);
            for (int k = 0; k < occ[in]; ++k) {
                Poly next;
                for (const auto& [mono, c] : poly) {
                    for (int o = 0; o < modes; ++o) {
                        Occ m = mono;
                        ++m[o];
                        next[m] += c * u(o, in);
                    }
                }
                poly = std::move(next);
            }
        }
        for (const auto& [mono, c] : poly) {
            double f = 1.0;
            for (int x : mono) {
                f *= factorial(x);
            }
            out[mono] += c * std::sqrt(f / norm);
        }
    }
    return out;
}

/// Product input of single-mode amplitude lists.
inline Poly product(const std::vector<std::vector<Complex>>& modes) {
    Poly p = {{Occ(), Complex(1.0)}};
    for (const auto& amps : modes) {
        Poly next;
        for (const auto& [occ, c] : p) {
            for (int n = 0; n < static_cast<int>(amps.size()); ++n) {
                if (amps[n] == 0.0) {
                    continue;
                }
                Occ o = occ;
                o.push_back(n);
                next[o] += c * amps[n];
            }
        }
        p = std::move(next);
    }
    return p;
}

/// (N+1)-point DFT, U_ij = exp(-2 pi i ij/(N+1)) / sqrt(N+1).
inline Eigen::MatrixXcd dft(int order) {
    const int d = order + 1;
    Eigen::MatrixXcd m(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            m(i, j) = std::polar(1.0 / std::sqrt(double(d)), -2.0 * M_PI * i * j / d);
        }
    }
    return m;
}

/// Direct evaluation of |sum c_n^* e^{i n theta}|^2 / 2 pi.
inline double canonical_density(const std::vector<Complex>& c, double theta) {
    Complex s = 0.0;
    for (size_t n = 0; n < c.size(); ++n) {
        s += std::conj(c[n]) * std::polar(1.0, double(n) * theta);
    }
    return std::norm(s) / (2.0 * M_PI);
}

inline std::vector<Complex> random_amplitudes(std::mt19937_64& rng, int cutoff) {
    std::normal_distribution<double> normal;
    std::vector<Complex> a(cutoff + 1);
    double norm = 0.0;
    for (auto& x : a) {
        x = {normal(rng), normal(rng)};
        norm += std::norm(x);
    }
    for (auto& x : a) {
        x /= std::sqrt(norm);
    }
    return a;
}

inline Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            g(i, j) = {normal(rng), normal(rng)};
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

}  // namespace oracle

#endif  // PHASESYNTH_TESTS_ORACLE_H
