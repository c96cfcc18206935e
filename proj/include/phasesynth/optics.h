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

#ifndef PHASESYNTH_OPTICS_H
#define PHASESYNTH_OPTICS_H

#include <Eigen/Dense>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "phasesynth/fock.h"

namespace phasesynth {

/// Default cap on the total photon number handled by the evolution engines.
inline constexpr int kDefaultPhotonLimit = 12;

/// Unitary mode-coupling matrix. Column j is the image of input mode j:
/// a_j^dag -> sum_i U_ij a_i^dag. The global phase multiplies every amplitude.
class ModeTransform {
   public:
    /// Throws std::invalid_argument unless `matrix` is square and unitary to 1e-12.
    explicit ModeTransform(Eigen::MatrixXcd matrix, double global_phase = 0.0);

    int num_modes() const { return static_cast<int>(matrix_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    double global_phase() const { return global_phase_; }
    /// exp(i global_phase) * matrix.
    Eigen::MatrixXcd full_matrix() const;
    ModeTransform adjoint() const;
    /// Max-norm of U^dag U - I.
    double unitarity_residual() const;

   private:
    Eigen::MatrixXcd matrix_;
    double global_phase_;
};

/// 50:50 symmetric beam splitter; a^dag -> (a^dag + i b^dag)/sqrt 2.
struct BeamSplitter {
    int mode_a;
    int mode_b;
};

/// Multiplies the amplitude of |n> in `mode` by exp(i n theta).
struct PhaseShifter {
    int mode;
    double theta;
};

/// Wire crossing: exchanges the labels of two modes.
struct Swap {
    int mode_a;
    int mode_b;
};

using NetworkElement = std::variant<BeamSplitter, PhaseShifter, Swap>;

/// Ordered list of elements acting on `num_modes` modes; the first element acts first.
class Network {
   public:
    Network(int num_modes, std::vector<NetworkElement> elements);

    int num_modes() const { return num_modes_; }
    std::span<const NetworkElement> elements() const { return elements_; }

   private:
    int num_modes_;
    std::vector<NetworkElement> elements_;
};

using Occupation = std::vector<int>;

/// Multimode pure state as a sparse map from occupation tuples to amplitudes.
class MultiModeState {
   public:
    using Terms = std::map<Occupation, Complex>;

    /// Checks tuple lengths and normalization (1e-9); does not renormalize.
    MultiModeState(int num_modes, Terms terms);

    /// Product state of single-mode states, one per mode. Terms below `drop_below`
    /// in modulus are omitted.
    static MultiModeState product(std::span<const FockVector> modes, double drop_below = 0.0);

    int num_modes() const { return num_modes_; }
    const Terms& terms() const { return terms_; }
    Complex amplitude(const Occupation& occ) const;
    double norm_squared() const;
    int max_total_photons() const;

   private:
    int num_modes_;
    Terms terms_;
};

ModeTransform beam_splitter_matrix();
/// U_ij = omega^{ij} / sqrt(N+1), omega = exp(-2 pi i / (N+1)).
ModeTransform dft_transform(int n);

/// Four-mode interferometer of four symmetric beam splitters whose composition
/// equals exp(i pi) * dft_transform(3). `ref_phase` is added to the input-1 shifter.
Network eight_port_network(double ref_phase);
/// Same network without the shifters in front of detectors 1-3.
Network eight_port_network_without_output_shifters(double ref_phase);

/// Matrix of a single element embedded in `num_modes` modes.
Eigen::MatrixXcd element_matrix(const NetworkElement& element, int num_modes);
ModeTransform compose(const Network& network);

/// Max-norm distance between `a` and `b` after the best per-row (output) phase is
/// applied to `a`. Zero iff they agree up to diagonal output phases.
double output_phase_residual(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Permanent of a square matrix: direct expansion up to 4x4, Ryser above.
Complex permanent(const Eigen::MatrixXcd& m);

/// Permanent of the matrix whose rows repeat row j of `u` row_mult[j] times and
/// whose columns repeat column i col_mult[i] times. Cost grows with the product of
/// (col_mult[i] + 1), not with the photon total.
Complex permanent_with_multiplicities(const Eigen::MatrixXcd& u, std::span<const int> row_mult,
                                      std::span<const int> col_mult);

/// <out| R |in> for Fock states through a transform.
Complex transition_amplitude(const ModeTransform& transform, const Occupation& in,
                             const Occupation& out);

/// All occupation tuples of `num_modes` modes with the given total, lexicographic order.
std::vector<Occupation> occupations_with_total(int num_modes, int total);

/// Exact Fock-space image of `state` computed from permanents.
MultiModeState evolve(const MultiModeState& state, const ModeTransform& transform,
                      int photon_limit = kDefaultPhotonLimit);

/// Exact image computed element by element; independent of `evolve`.
MultiModeState evolve_sequential(const MultiModeState& state, const Network& network,
                                 int photon_limit = kDefaultPhotonLimit);

}  // namespace phasesynth

#endif  // PHASESYNTH_OPTICS_H
