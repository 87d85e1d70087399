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

#include "corrimg/fock.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace corrimg::fock {
namespace {

using Triplet = Eigen::Triplet<Complex>;

SparseMatrix from_triplets(int rows, int cols, const std::vector<Triplet>& triplets) {
  SparseMatrix m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

double squared_norm(const SparseMatrix& m) { return m.squaredNorm(); }

void check_tail(double tail, const FockCutoff& cutoff, std::string_view what) {
  if (tail > cutoff.tail_tolerance) {
    std::ostringstream msg;
    msg << what << ": marginal tail mass " << tail << " beyond dim " << cutoff.dim
        << " exceeds tolerance " << cutoff.tail_tolerance << "; raise dim";
    throw TruncationError(msg.str());
  }
}

double poisson_tail(double mean, int dim) {
  if (mean == 0.0) return 0.0;
  // Sum the upper tail directly; 1 - cdf loses the digits that matter here.
  const double log_mean = std::log(mean);
  double tail = 0.0;
  for (int k = dim;; ++k) {
    const double term = std::exp(k * log_mean - mean - std::lgamma(k + 1.0));
    tail += term;
    if (k > mean && term < tail * 1e-18) break;
    if (term == 0.0 && k > mean) break;
  }
  return tail;
}

double geometric_tail(double mean, int dim) {
  if (mean == 0.0) return 0.0;
  return std::pow(mean / (mean + 1.0), dim);
}

// log of sqrt(n^k / (n+1)^(k+1)).
double log_schmidt(double n, int k) {
  return 0.5 * (k * std::log(n) - (k + 1) * std::log1p(n));
}

double binomial_amplitude(int k, int j, double cos_theta, double sin_theta) {
  // sqrt(C(k, j)) cos^j sin^(k-j); zero powers handled explicitly.
  if ((cos_theta == 0.0 && j > 0) || (sin_theta == 0.0 && k - j > 0)) return 0.0;
  double log_amp = 0.5 * (std::lgamma(k + 1.0) - std::lgamma(j + 1.0) - std::lgamma(k - j + 1.0));
  if (j > 0) log_amp += j * std::log(cos_theta);
  if (k - j > 0) log_amp += (k - j) * std::log(sin_theta);
  return std::exp(log_amp);
}

void check_transmittance(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("transmittance must lie in [0, 1]");
}

}  // namespace

FockCutoff::FockCutoff(int dim_, double tail_tolerance_) : dim(dim_), tail_tolerance(tail_tolerance_) {
  if (dim < 2) throw std::invalid_argument("Fock cutoff needs dim >= 2");
  if (!(tail_tolerance >= 0.0 && tail_tolerance < 1.0)) {
    throw std::invalid_argument("tail tolerance must lie in [0, 1)");
  }
}

// ---------------------------------------------------------------------------
// ModeOperator

ModeOperator::ModeOperator(SparseMatrix matrix, OperatorLabel label)
    : matrix_(std::move(matrix)), label_(label) {
  if (matrix_.rows() != matrix_.cols()) throw std::invalid_argument("mode operator must be square");
}

ModeOperator ModeOperator::annihilation(int dim) {
  std::vector<Triplet> t;
  for (int k = 1; k < dim; ++k) t.emplace_back(k - 1, k, std::sqrt(static_cast<double>(k)));
  return {from_triplets(dim, dim, t), OperatorLabel::kAnnihilation};
}

ModeOperator ModeOperator::creation(int dim) {
  return {annihilation(dim).matrix().adjoint(), OperatorLabel::kCreation};
}

ModeOperator ModeOperator::number(int dim) {
  std::vector<Triplet> t;
  for (int k = 1; k < dim; ++k) t.emplace_back(k, k, static_cast<double>(k));
  return {from_triplets(dim, dim, t), OperatorLabel::kNumber};
}

ModeOperator ModeOperator::quadrature_in(int dim) {
  SparseMatrix a = annihilation(dim).matrix();
  SparseMatrix ad = a.adjoint();
  return {(a + ad) * Complex(0.5, 0.0), OperatorLabel::kQuadratureIn};
}

ModeOperator ModeOperator::quadrature_out(int dim) {
  SparseMatrix a = annihilation(dim).matrix();
  SparseMatrix ad = a.adjoint();
  // (a - a^dag) / 2i
  return {(a - ad) * Complex(0.0, -0.5), OperatorLabel::kQuadratureOut};
}

ModeOperator ModeOperator::identity(int dim) {
  SparseMatrix id(dim, dim);
  id.setIdentity();
  return {id, OperatorLabel::kIdentity};
}

ModeOperator ModeOperator::quadrature(int dim, QuadraturePhase phase) {
  return phase == QuadraturePhase::kIn ? quadrature_in(dim) : quadrature_out(dim);
}

ModeOperator ModeOperator::quadrature_squared(int dim, QuadraturePhase phase) {
  // x^2 = (a^2 + a^dag^2 + 2n + 1)/4, p^2 = (2n + 1 - a^2 - a^dag^2)/4
  const double sign = phase == QuadraturePhase::kIn ? 1.0 : -1.0;
  std::vector<Triplet> t;
  for (int k = 0; k < dim; ++k) {
    t.emplace_back(k, k, (2.0 * k + 1.0) / 4.0);
    if (k + 2 < dim) {
      const double v = sign * std::sqrt(static_cast<double>(k + 1) * (k + 2)) / 4.0;
      t.emplace_back(k, k + 2, v);
      t.emplace_back(k + 2, k, v);
    }
  }
  return {from_triplets(dim, dim, t), OperatorLabel::kComposite};
}

ModeOperator ModeOperator::adjoint() const {
  OperatorLabel label = OperatorLabel::kComposite;
  switch (label_) {
    case OperatorLabel::kAnnihilation:
      label = OperatorLabel::kCreation;
      break;
    case OperatorLabel::kCreation:
      label = OperatorLabel::kAnnihilation;
      break;
    case OperatorLabel::kComposite:
      break;
    default:
      label = label_;  // Hermitian
  }
  return {matrix_.adjoint(), label};
}

ModeOperator operator*(const ModeOperator& lhs, const ModeOperator& rhs) {
  if (lhs.dim() != rhs.dim()) throw std::invalid_argument("mode operator dimension mismatch");
  SparseMatrix m = lhs.matrix_ * rhs.matrix_;
  return {m, OperatorLabel::kComposite};
}

ModeOperator operator+(const ModeOperator& lhs, const ModeOperator& rhs) {
  if (lhs.dim() != rhs.dim()) throw std::invalid_argument("mode operator dimension mismatch");
  SparseMatrix m = lhs.matrix_ + rhs.matrix_;
  return {m, OperatorLabel::kComposite};
}

ModeOperator operator-(const ModeOperator& lhs, const ModeOperator& rhs) {
  if (lhs.dim() != rhs.dim()) throw std::invalid_argument("mode operator dimension mismatch");
  SparseMatrix m = lhs.matrix_ - rhs.matrix_;
  return {m, OperatorLabel::kComposite};
}

ModeOperator operator*(Complex scale, const ModeOperator& op) {
  SparseMatrix m = op.matrix_ * scale;
  return {m, OperatorLabel::kComposite};
}

// ---------------------------------------------------------------------------
// TwoModeFockState

TwoModeFockState::TwoModeFockState(FockCutoff cutoff, std::vector<PureComponent> components,
                                   double truncated_mass)
    : cutoff_(cutoff), components_(std::move(components)), truncated_mass_(truncated_mass) {
  if (components_.empty()) throw std::invalid_argument("state needs at least one component");
  for (const auto& c : components_) {
    if (c.amplitudes.rows() != cutoff_.dim || c.amplitudes.cols() != cutoff_.dim) {
      throw std::invalid_argument("component shape does not match cutoff");
    }
    if (!(c.weight >= 0.0)) throw std::invalid_argument("component weights must be >= 0");
  }
}

double TwoModeFockState::trace() const {
  double total = 0.0;
  for (const auto& c : components_) total += c.weight * squared_norm(c.amplitudes);
  return total;
}

Eigen::MatrixXcd TwoModeFockState::density_matrix() const {
  const int dim = cutoff_.dim;
  if (dim > 40) throw std::length_error("dense density matrix requested for dim > 40");
  const int size = dim * dim;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(size, size);
  Eigen::VectorXcd psi(size);
  for (const auto& c : components_) {
    psi.setZero();
    for (int col = 0; col < c.amplitudes.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(c.amplitudes, col); it; ++it) {
        psi(it.row() * dim + it.col()) = it.value();
      }
    }
    rho.noalias() += c.weight * psi * psi.adjoint();
  }
  return rho;
}

Eigen::MatrixXd TwoModeFockState::photon_distribution() const {
  const int dim = cutoff_.dim;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& c : components_) {
    for (int col = 0; col < c.amplitudes.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(c.amplitudes, col); it; ++it) {
        p(it.row(), it.col()) += c.weight * std::norm(it.value());
      }
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Construction

double marginal_tail(SourceKind kind, double n, int dim) {
  switch (kind) {
    case SourceKind::kCoherentSplit:
      return poisson_tail(n, dim);
    case SourceKind::kPdc:
    case SourceKind::kThermalSplit:
      return geometric_tail(n, dim);
  }
  return 1.0;
}

double marginal_moment_tail(SourceKind kind, double n, int dim) {
  if (n == 0.0) return 0.0;
  // log P(k) for the output-mode marginal.
  auto log_pmf = [&](int k) {
    if (kind == SourceKind::kCoherentSplit) return k * std::log(n) - n - std::lgamma(k + 1.0);
    return k * std::log(n) - (k + 1) * std::log1p(n);
  };
  double tail = 0.0;
  for (int k = dim;; ++k) {
    const double term = (k + 1.0) * (k + 1.0) * std::exp(log_pmf(k));
    tail += term;
    if (k > dim + 8 && k > 2.0 * n && term <= tail * 1e-18) break;
  }
  return tail;
}

FockCutoff choose_moment_cutoff(const SourceSpec& source, double tolerance, int max_dim) {
  if (!(tolerance > 0.0 && tolerance < 1.0)) throw std::invalid_argument("tolerance must lie in (0, 1)");
  for (int dim = 2; dim <= max_dim; ++dim) {
    if (marginal_moment_tail(source.kind(), source.n_per_mode(), dim) < tolerance) {
      return FockCutoff(dim, tolerance);
    }
  }
  std::ostringstream msg;
  msg << "source " << source.str() << " needs more than " << max_dim
      << " Fock levels per mode for moment tolerance " << tolerance;
  throw TruncationError(msg.str());
}

FockCutoff choose_cutoff(const SourceSpec& source, double tail_tolerance, int max_dim) {
  if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0)) {
    throw std::invalid_argument("tail tolerance must lie in (0, 1)");
  }
  for (int dim = 2; dim <= max_dim; ++dim) {
    if (marginal_tail(source.kind(), source.n_per_mode(), dim) < tail_tolerance) {
      return FockCutoff(dim, tail_tolerance);
    }
  }
  std::ostringstream msg;
  msg << "source " << source.str() << " needs more than " << max_dim
      << " Fock levels per mode at tail tolerance " << tail_tolerance;
  throw TruncationError(msg.str());
}

TwoModeFockState make_tmsv(double gain, FockCutoff cutoff, bool flip_coupling_sign) {
  if (!(gain >= 1.0) || !std::isfinite(gain)) throw std::invalid_argument("PDC gain must be >= 1");
  const double n = gain - 1.0;
  const int dim = cutoff.dim;
  const double tail = geometric_tail(n, dim);
  check_tail(tail, cutoff, "two-mode squeezed vacuum");

  const double renorm = 1.0 / std::sqrt(1.0 - tail);
  std::vector<Triplet> t;
  if (n == 0.0) {
    t.emplace_back(0, 0, 1.0);
  } else {
    for (int k = 0; k < dim; ++k) {
      double amp = std::exp(log_schmidt(n, k)) * renorm;
      if (flip_coupling_sign && (k % 2 == 1)) amp = -amp;
      t.emplace_back(k, k, amp);
    }
  }
  return TwoModeFockState(cutoff, {{1.0, from_triplets(dim, dim, t)}}, tail);
}

TwoModeFockState make_split_coherent(Complex alpha, FockCutoff cutoff) {
  const int dim = cutoff.dim;
  // c = sqrt(T) a - sqrt(1-T) b, d = sqrt(T) b + sqrt(1-T) a with b in vacuum.
  const double sqrt_t = std::sqrt(0.5);
  const Complex beta_c = alpha * sqrt_t;
  const Complex beta_d = alpha * std::sqrt(1.0 - 0.5);
  const double mean_c = std::norm(beta_c);
  const double mean_d = std::norm(beta_d);
  check_tail(std::max(poisson_tail(mean_c, dim), poisson_tail(mean_d, dim)), cutoff,
             "split coherent state");

  auto coherent = [dim](Complex beta) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(0) = std::exp(-0.5 * std::norm(beta));
    for (int k = 1; k < dim; ++k) v(k) = v(k - 1) * beta / std::sqrt(static_cast<double>(k));
    return v;
  };
  Eigen::VectorXcd vc = coherent(beta_c);
  Eigen::VectorXcd vd = coherent(beta_d);
  const double kept = vc.squaredNorm() * vd.squaredNorm();
  vc /= std::sqrt(vc.squaredNorm());
  vd /= std::sqrt(vd.squaredNorm());

  std::vector<Triplet> t;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const Complex amp = vc(i) * vd(j);
      if (amp != Complex(0.0, 0.0)) t.emplace_back(i, j, amp);
    }
  }
  return TwoModeFockState(cutoff, {{1.0, from_triplets(dim, dim, t)}}, std::max(0.0, 1.0 - kept));
}

SparseMatrix beam_splitter_output(double transmittance, int k, int dim) {
  check_transmittance(transmittance);
  const double cos_theta = std::sqrt(transmittance);
  const double sin_theta = std::sqrt(1.0 - transmittance);
  std::vector<Triplet> t;
  for (int j = std::max(0, k - dim + 1); j <= std::min(k, dim - 1); ++j) {
    const double amp = binomial_amplitude(k, j, cos_theta, sin_theta);
    if (amp != 0.0) t.emplace_back(j, k - j, amp);
  }
  return from_triplets(dim, dim, t);
}

TwoModeFockState make_split_thermal(double input_mean, FockCutoff cutoff) {
  if (!(input_mean >= 0.0) || !std::isfinite(input_mean)) {
    throw std::invalid_argument("thermal input mean must be >= 0");
  }
  const int dim = cutoff.dim;
  check_tail(geometric_tail(0.5 * input_mean, dim), cutoff, "split thermal state");
  if (input_mean == 0.0) {
    return TwoModeFockState(cutoff, {{1.0, from_triplets(dim, dim, {Triplet(0, 0, 1.0)})}}, 0.0);
  }

  // rho_therm ⊗ |0><0| is diagonal in |k,0>; each term maps to the pure
  // state U|k,0>, which keeps some weight in the box for every k <= 2(dim-1).
  const double log_ratio = std::log(input_mean) - std::log1p(input_mean);
  const double log_norm = -std::log1p(input_mean);
  std::vector<PureComponent> components;
  double kept_mass = 0.0;
  for (int k = 0; k <= 2 * (dim - 1); ++k) {
    const double pk = std::exp(log_norm + k * log_ratio);
    SparseMatrix psi = beam_splitter_output(0.5, k, dim);
    const double kept = psi.squaredNorm();
    if (kept == 0.0 || pk * kept == 0.0) continue;
    psi /= std::sqrt(kept);
    components.push_back({pk * kept, std::move(psi)});
    kept_mass += pk * kept;
  }
  for (auto& c : components) c.weight /= kept_mass;
  return TwoModeFockState(cutoff, std::move(components), std::max(0.0, 1.0 - kept_mass));
}

TwoModeFockState make_source_state(const SourceSpec& source, FockCutoff cutoff,
                                   bool flip_coupling_sign) {
  switch (source.kind()) {
    case SourceKind::kPdc:
      return make_tmsv(source.pdc_gain(), cutoff, flip_coupling_sign);
    case SourceKind::kCoherentSplit:
      return make_split_coherent(Complex(std::sqrt(source.coherent_input_intensity()), 0.0), cutoff);
    case SourceKind::kThermalSplit:
      return make_split_thermal(source.thermal_input_mean(), cutoff);
  }
  throw std::logic_error("unknown source kind");
}

SparseMatrix beam_splitter_unitary(double transmittance, const FockCutoff& cutoff) {
  check_transmittance(transmittance);
  const int dim = cutoff.dim;
  const double theta = std::acos(std::sqrt(transmittance));
  std::vector<Triplet> t;
  // The generator a b^dag - a^dag b conserves n_a + n_b; exponentiate each
  // total-number block restricted to the box.
  for (int total = 0; total <= 2 * (dim - 1); ++total) {
    const int lo = std::max(0, total - dim + 1);
    const int hi = std::min(total, dim - 1);
    const int size = hi - lo + 1;
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(size, size);
    for (int i = 0; i < size; ++i) {
      const int na = lo + i;
      const int nb = total - na;
      // a b^dag |na, nb> = sqrt(na (nb+1)) |na-1, nb+1>
      if (na - 1 >= lo) gen(i - 1, i) += std::sqrt(static_cast<double>(na) * (nb + 1));
      // -a^dag b |na, nb> = -sqrt((na+1) nb) |na+1, nb-1>
      if (na + 1 <= hi) gen(i + 1, i) -= std::sqrt(static_cast<double>(na + 1) * nb);
    }
    const Eigen::MatrixXd block = (theta * gen).exp();
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        if (block(i, j) == 0.0) continue;
        const int row = (lo + i) * dim + (total - lo - i);
        const int col = (lo + j) * dim + (total - lo - j);
        t.emplace_back(row, col, block(i, j));
      }
    }
  }
  return from_triplets(dim * dim, dim * dim, t);
}

SparseMatrix loss_kraus(double transmittance, int lost, int dim) {
  check_transmittance(transmittance);
  const double cos_theta = std::sqrt(transmittance);
  const double sin_theta = std::sqrt(1.0 - transmittance);
  std::vector<Triplet> t;
  for (int n = lost; n < dim; ++n) {
    // <n - l, l| U_BS |n, 0>
    const double amp = binomial_amplitude(n, n - lost, cos_theta, sin_theta);
    if (amp != 0.0) t.emplace_back(n - lost, n, amp);
  }
  return from_triplets(dim, dim, t);
}

TwoModeFockState loss_channel(const TwoModeFockState& state, Mode mode, double transmittance) {
  check_transmittance(transmittance);
  if (transmittance == 1.0) return state;
  const int dim = state.dim();
  std::vector<SparseMatrix> kraus;
  kraus.reserve(dim);
  for (int l = 0; l < dim; ++l) kraus.push_back(loss_kraus(transmittance, l, dim));

  std::vector<PureComponent> out;
  for (const auto& comp : state.components()) {
    for (const auto& k : kraus) {
      SparseMatrix psi = mode == Mode::kC ? SparseMatrix(k * comp.amplitudes)
                                          : SparseMatrix(comp.amplitudes * SparseMatrix(k.transpose()));
      psi.prune(Complex(0.0, 0.0));
      const double norm2 = psi.squaredNorm();
      if (norm2 == 0.0 || comp.weight * norm2 == 0.0) continue;
      psi /= std::sqrt(norm2);
      out.push_back({comp.weight * norm2, std::move(psi)});
    }
  }
  return TwoModeFockState(state.cutoff(), std::move(out), state.truncated_mass());
}

// ---------------------------------------------------------------------------
// Expectation values

Complex expectation(const TwoModeFockState& state, const ModeOperator& on_c,
                    const ModeOperator& on_d) {
  if (on_c.dim() != state.dim() || on_d.dim() != state.dim()) {
    throw std::invalid_argument("observable dimension does not match the Fock cutoff");
  }
  const SparseMatrix od_t = on_d.matrix().transpose();
  Complex total(0.0, 0.0);
  for (const auto& comp : state.components()) {
    const SparseMatrix applied = on_c.matrix() * comp.amplitudes * od_t;
    total += comp.weight * comp.amplitudes.conjugate().cwiseProduct(applied).sum();
  }
  return total;
}

Complex expectation(const TwoModeFockState& state, std::span<const ObservableTerm> observable) {
  Complex total(0.0, 0.0);
  for (const auto& term : observable) total += term.coef * expectation(state, term.on_c, term.on_d);
  return total;
}

}  // namespace corrimg::fock
