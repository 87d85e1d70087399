// Copyright 2026 The corrimg Authors
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

#ifndef CORRIMG_FOCK_H_
#define CORRIMG_FOCK_H_

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "corrimg/source.h"

// Truncated Fock-space model of the two output modes c (object) and d
// (reference). Two-mode amplitudes are stored as dim x dim matrices with
// row index n_c and column index n_d; the flattened two-mode index is
// n_c * dim + n_d (mode c outer).
namespace corrimg::fock {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

inline constexpr int kDefaultMaxDim = 512;

/// Raised when a requested state does not fit the Fock truncation.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FockCutoff {
  FockCutoff(int dim, double tail_tolerance);

  int dim;
  double tail_tolerance;
};

enum class Mode { kC, kD };

enum class OperatorLabel {
  kAnnihilation,
  kCreation,
  kNumber,
  kQuadratureIn,
  kQuadratureOut,
  kIdentity,
  kComposite,
};

/// Single-mode operator on the truncated space.
class ModeOperator {
 public:
  ModeOperator(SparseMatrix matrix, OperatorLabel label);

  static ModeOperator annihilation(int dim);
  static ModeOperator creation(int dim);
  static ModeOperator number(int dim);
  static ModeOperator quadrature_in(int dim);
  static ModeOperator quadrature_out(int dim);
  static ModeOperator identity(int dim);
  static ModeOperator quadrature(int dim, QuadraturePhase phase);
  /// Truncation of the exact q^2 = (a^2 + a^dag^2 -/+ (2n + 1))/4; unlike
  /// quadrature(dim, phase) squared it has no defect in the last level.
  static ModeOperator quadrature_squared(int dim, QuadraturePhase phase);

  const SparseMatrix& matrix() const { return matrix_; }
  OperatorLabel label() const { return label_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

  ModeOperator adjoint() const;

  friend ModeOperator operator*(const ModeOperator& lhs, const ModeOperator& rhs);
  friend ModeOperator operator+(const ModeOperator& lhs, const ModeOperator& rhs);
  friend ModeOperator operator-(const ModeOperator& lhs, const ModeOperator& rhs);
  friend ModeOperator operator*(Complex scale, const ModeOperator& op);

 private:
  SparseMatrix matrix_;
  OperatorLabel label_;
};

/// One term coef * (on_c ⊗ on_d) of a two-mode observable.
struct ObservableTerm {
  Complex coef;
  ModeOperator on_c;
  ModeOperator on_d;
};

struct PureComponent {
  double weight;
  SparseMatrix amplitudes;
};

/// Mixed two-mode state held as a weighted ensemble of normalized pure
/// components. A single component means the state is pure.
class TwoModeFockState {
 public:
  TwoModeFockState(FockCutoff cutoff, std::vector<PureComponent> components,
                   double truncated_mass = 0.0);

  const FockCutoff& cutoff() const { return cutoff_; }
  int dim() const { return cutoff_.dim; }
  std::span<const PureComponent> components() const { return components_; }
  bool is_pure() const { return components_.size() == 1; }

  /// Probability mass of the exact state that fell outside the truncation
  /// before renormalization.
  double truncated_mass() const { return truncated_mass_; }

  double trace() const;

  /// Dense dim^2 x dim^2 density matrix. Only for small cutoffs (dim <= 40).
  Eigen::MatrixXcd density_matrix() const;

  /// Joint photon-number distribution P(n_c, n_d).
  Eigen::MatrixXd photon_distribution() const;

 private:
  FockCutoff cutoff_;
  std::vector<PureComponent> components_;
  double truncated_mass_;
};

/// Probability that one output mode of `kind` at mean `n` holds dim or more
/// photons.
double marginal_tail(SourceKind kind, double n, int dim);

FockCutoff choose_cutoff(const SourceSpec& source, double tail_tolerance,
                         int max_dim = kDefaultMaxDim);

/// sum_{k >= dim} (k + 1)^2 P(k) for one output mode: bounds the truncation
/// error of second photon-number and quadrature moments.
double marginal_moment_tail(SourceKind kind, double n, int dim);

/// Smallest dim whose moment tail is below `tolerance`. Used when second
/// moments, not probabilities, must be accurate to `tolerance`.
FockCutoff choose_moment_cutoff(const SourceSpec& source, double tolerance,
                                int max_dim = kDefaultMaxDim);

/// Two-mode squeezed vacuum from an ideal parametric amplifier of power gain
/// `gain` acting on vacuum. `flip_coupling_sign` builds the state for the
/// wrong-sign amplifier (c = sqrt(G) a - sqrt(G-1) b^dag); it exists only for
/// negative-control checks.
TwoModeFockState make_tmsv(double gain, FockCutoff cutoff, bool flip_coupling_sign = false);

/// Coherent state |alpha> split on a 50/50 beam splitter with vacuum in the
/// other port.
TwoModeFockState make_split_coherent(Complex alpha, FockCutoff cutoff);

/// Thermal state of mean `input_mean` split on a 50/50 beam splitter with
/// vacuum in the other port.
TwoModeFockState make_split_thermal(double input_mean, FockCutoff cutoff);

TwoModeFockState make_source_state(const SourceSpec& source, FockCutoff cutoff,
                                   bool flip_coupling_sign = false);

/// Amplitudes of U|k,0> for the beam splitter of power transmittance T,
/// restricted to the dim x dim box.
SparseMatrix beam_splitter_output(double transmittance, int k, int dim);

/// Beam-splitter unitary on the truncated two-mode space (dim^2 x dim^2,
/// flattened index n_a * dim + n_b). Satisfies U^dag a U = sqrt(T) a -
/// sqrt(1-T) b and U^dag b U = sqrt(T) b + sqrt(1-T) a away from the
/// truncation boundary.
SparseMatrix beam_splitter_unitary(double transmittance, const FockCutoff& cutoff);

/// Kraus operator <l| U_BS |0> of a loss channel with transmittance t.
SparseMatrix loss_kraus(double transmittance, int lost, int dim);

TwoModeFockState loss_channel(const TwoModeFockState& state, Mode mode, double transmittance);

Complex expectation(const TwoModeFockState& state, const ModeOperator& on_c,
                    const ModeOperator& on_d);
Complex expectation(const TwoModeFockState& state, std::span<const ObservableTerm> observable);

}  // namespace corrimg::fock

#endif  // CORRIMG_FOCK_H_
