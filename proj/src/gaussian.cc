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

#include "corrimg/gaussian.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "corrimg/correlators.h"

namespace corrimg::gaussian {
namespace {

constexpr int kXc = 0, kPc = 1, kXd = 2, kPd = 3;

int offset(QuadraturePhase phase) { return phase == QuadraturePhase::kIn ? 0 : 1; }

// Fourth raw moment E[X_i X_j X_k X_l] of a Gaussian vector via Isserlis.
double moment4(const Vector4& mu, const Matrix4& s, int i, int j, int k, int l) {
  return mu(i) * mu(j) * mu(k) * mu(l)
         // one centered pair, two means
         + s(i, j) * mu(k) * mu(l) + s(i, k) * mu(j) * mu(l) + s(i, l) * mu(j) * mu(k) +
         s(j, k) * mu(i) * mu(l) + s(j, l) * mu(i) * mu(k) + s(k, l) * mu(i) * mu(j)
         // two centered pairs
         + s(i, j) * s(k, l) + s(i, k) * s(j, l) + s(i, l) * s(j, k);
}

double moment2(const Vector4& mu, const Matrix4& s, int i, int j) { return s(i, j) + mu(i) * mu(j); }

}  // namespace

GaussianTwoModeState::GaussianTwoModeState(Vector4 mean, Matrix4 cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("covariance matrix is not symmetric");
  }
  cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
  const auto nu = symplectic_eigenvalues(cov_);
  if (nu[0] < kVacuumVariance - 1e-12) {
    throw std::invalid_argument("covariance matrix violates the uncertainty principle");
  }
}

GaussianTwoModeState GaussianTwoModeState::vacuum() {
  return {Vector4::Zero(), kVacuumVariance * Matrix4::Identity()};
}

Eigen::Vector2d GaussianTwoModeState::marginal_mean(QuadraturePhase phase) const {
  const int o = offset(phase);
  return {mean_(kXc + o), mean_(kXd + o)};
}

Eigen::Matrix2d GaussianTwoModeState::marginal_cov(QuadraturePhase phase) const {
  const int o = offset(phase);
  Eigen::Matrix2d m;
  m << cov_(kXc + o, kXc + o), cov_(kXc + o, kXd + o), cov_(kXd + o, kXc + o), cov_(kXd + o, kXd + o);
  return m;
}

std::array<double, 2> symplectic_eigenvalues(const Matrix4& cov) {
  Matrix4 omega = Matrix4::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  // Eigenvalues of Omega * cov come in pairs ±i nu.
  Eigen::EigenSolver<Matrix4> solver(omega * cov, false);
  std::array<double, 4> mags;
  for (int i = 0; i < 4; ++i) mags[i] = std::abs(solver.eigenvalues()(i).imag());
  std::sort(mags.begin(), mags.end());
  return {0.5 * (mags[0] + mags[1]), 0.5 * (mags[2] + mags[3])};
}

Matrix4 beam_splitter_symplectic(double transmittance) {
  if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
    throw std::invalid_argument("transmittance must lie in [0, 1]");
  }
  const double t = std::sqrt(transmittance);
  const double r = std::sqrt(1.0 - transmittance);
  Matrix4 s;
  s << t, 0, -r, 0,  //
      0, t, 0, -r,   //
      r, 0, t, 0,    //
      0, r, 0, t;
  return s;
}

Matrix4 amplifier_symplectic(double gain, bool flip_coupling_sign) {
  if (!(gain >= 1.0)) throw std::invalid_argument("amplifier gain must be >= 1");
  const double g = std::sqrt(gain);
  const double h = (flip_coupling_sign ? -1.0 : 1.0) * std::sqrt(gain - 1.0);
  // b^dag contributes +x_b to x_c and -p_b to p_c.
  Matrix4 s;
  s << g, 0, h, 0,  //
      0, g, 0, -h,  //
      h, 0, g, 0,   //
      0, -h, 0, g;
  return s;
}

GaussianTwoModeState apply(const Matrix4& symplectic, const GaussianTwoModeState& state) {
  return {symplectic * state.mean(), symplectic * state.cov() * symplectic.transpose()};
}

GaussianTwoModeState input_state(std::complex<double> alpha, double thermal_mean) {
  if (!(thermal_mean >= 0.0)) throw std::invalid_argument("thermal mean must be >= 0");
  Vector4 mean(alpha.real(), alpha.imag(), 0.0, 0.0);
  Matrix4 cov = kVacuumVariance * Matrix4::Identity();
  cov(0, 0) = cov(1, 1) = (2.0 * thermal_mean + 1.0) / 4.0;
  return {mean, cov};
}

GaussianTwoModeState gaussian_from_source(const SourceSpec& source, bool flip_coupling_sign) {
  switch (source.kind()) {
    case SourceKind::kPdc:
      return apply(amplifier_symplectic(source.pdc_gain(), flip_coupling_sign),
                   GaussianTwoModeState::vacuum());
    case SourceKind::kCoherentSplit:
      return apply(beam_splitter_symplectic(0.5),
                   input_state({std::sqrt(source.coherent_input_intensity()), 0.0}, 0.0));
    case SourceKind::kThermalSplit:
      return apply(beam_splitter_symplectic(0.5), input_state({0.0, 0.0}, source.thermal_input_mean()));
  }
  throw std::logic_error("unknown source kind");
}

std::optional<double> quadrature_correlation(const GaussianTwoModeState& state, QuadraturePhase phase) {
  const Eigen::Matrix2d m = state.marginal_cov(phase);
  return normalized_correlation(m(0, 1), m(0, 0), m(1, 1));
}

PhotonMoments photon_moments(const GaussianTwoModeState& state) {
  const Vector4& mu = state.mean();
  const Matrix4& s = state.cov();
  // With this quadrature scaling the Weyl symbols are
  //   n      <-> x^2 + p^2 - 1/2
  //   n^2    <-> (x^2 + p^2)^2 - (x^2 + p^2)
  // and symbols of commuting operators on different modes multiply.
  auto r_mean = [&](int x, int p) { return moment2(mu, s, x, x) + moment2(mu, s, p, p); };
  auto r_product = [&](int x1, int p1, int x2, int p2) {
    return moment4(mu, s, x1, x1, x2, x2) + moment4(mu, s, x1, x1, p2, p2) +
           moment4(mu, s, p1, p1, x2, x2) + moment4(mu, s, p1, p1, p2, p2);
  };
  const double rc = r_mean(kXc, kPc);
  const double rd = r_mean(kXd, kPd);
  PhotonMoments m;
  m.mean_c = rc - 0.5;
  m.mean_d = rd - 0.5;
  m.var_c = (r_product(kXc, kPc, kXc, kPc) - rc) - m.mean_c * m.mean_c;
  m.var_d = (r_product(kXd, kPd, kXd, kPd) - rd) - m.mean_d * m.mean_d;
  const double ncnd = r_product(kXc, kPc, kXd, kPd) - 0.5 * (rc + rd) + 0.25;
  m.cov_cd = ncnd - m.mean_c * m.mean_d;
  return m;
}

DifferenceVariances difference_variances(const GaussianTwoModeState& state, QuadraturePhase phase) {
  const PhotonMoments m = photon_moments(state);
  const Eigen::Matrix2d q = state.marginal_cov(phase);
  return {m.var_c + m.var_d - 2.0 * m.cov_cd, q(0, 0) + q(1, 1) - 2.0 * q(0, 1)};
}

double quadrature_difference_mean(const GaussianTwoModeState& state, QuadraturePhase phase) {
  const Eigen::Vector2d m = state.marginal_mean(phase);
  return m(0) - m(1);
}

}  // namespace corrimg::gaussian
