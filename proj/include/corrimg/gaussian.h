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

#ifndef CORRIMG_GAUSSIAN_H_
#define CORRIMG_GAUSSIAN_H_

#include <array>
#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "corrimg/source.h"

// Exact first- and second-moment description of two-mode Gaussian states.
// Quadratures follow x = (a + a^dag)/2, p = (a - a^dag)/2i, so the vacuum
// covariance is I/4. Ordering is (x_c, p_c, x_d, p_d).
namespace corrimg::gaussian {

using Vector4 = Eigen::Vector4d;
using Matrix4 = Eigen::Matrix4d;

inline constexpr double kVacuumVariance = 0.25;

class GaussianTwoModeState {
 public:
  /// Throws std::invalid_argument if cov is not symmetric or violates the
  /// uncertainty bound.
  GaussianTwoModeState(Vector4 mean, Matrix4 cov);

  static GaussianTwoModeState vacuum();

  const Vector4& mean() const { return mean_; }
  const Matrix4& cov() const { return cov_; }

  /// Mean and covariance of the (q_c, q_d) pair for one quadrature phase.
  Eigen::Vector2d marginal_mean(QuadraturePhase phase) const;
  Eigen::Matrix2d marginal_cov(QuadraturePhase phase) const;

 private:
  Vector4 mean_;
  Matrix4 cov_;
};

/// Symplectic eigenvalues in ascending order.
std::array<double, 2> symplectic_eigenvalues(const Matrix4& cov);

/// Real symplectic maps of the four-port devices acting on (x_a, p_a, x_b, p_b).
/// Beam splitter: c = sqrt(T) a - sqrt(1-T) b, d = sqrt(T) b + sqrt(1-T) a.
Matrix4 beam_splitter_symplectic(double transmittance);
/// Parametric amplifier: c = sqrt(G) a + s sqrt(G-1) b^dag,
/// d = sqrt(G) b + s sqrt(G-1) a^dag with s = +1, or s = -1 when
/// `flip_coupling_sign` is set (negative control only).
Matrix4 amplifier_symplectic(double gain, bool flip_coupling_sign = false);

GaussianTwoModeState apply(const Matrix4& symplectic, const GaussianTwoModeState& state);

/// Product input: coherent amplitude `alpha` on top of a thermal mode of
/// mean `thermal_mean` in port a, vacuum in port b.
GaussianTwoModeState input_state(std::complex<double> alpha, double thermal_mean);

GaussianTwoModeState gaussian_from_source(const SourceSpec& source,
                                          bool flip_coupling_sign = false);

std::optional<double> quadrature_correlation(const GaussianTwoModeState& state,
                                             QuadraturePhase phase = QuadraturePhase::kIn);

struct PhotonMoments {
  double mean_c = 0.0;
  double mean_d = 0.0;
  double var_c = 0.0;
  double var_d = 0.0;
  double cov_cd = 0.0;
};

PhotonMoments photon_moments(const GaussianTwoModeState& state);

struct DifferenceVariances {
  double intensity;   // Var(n_c - n_d)
  double quadrature;  // Var(q_c - q_d)
};

DifferenceVariances difference_variances(const GaussianTwoModeState& state,
                                         QuadraturePhase phase = QuadraturePhase::kIn);

/// <q_c - q_d>; the raw second moment of the difference equals its variance
/// when this vanishes.
double quadrature_difference_mean(const GaussianTwoModeState& state,
                                  QuadraturePhase phase = QuadraturePhase::kIn);

}  // namespace corrimg::gaussian

#endif  // CORRIMG_GAUSSIAN_H_
