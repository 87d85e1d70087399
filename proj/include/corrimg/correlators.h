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

#ifndef CORRIMG_CORRELATORS_H_
#define CORRIMG_CORRELATORS_H_

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "corrimg/source.h"

namespace corrimg {

namespace fock {
class TwoModeFockState;
}
namespace gaussian {
class GaussianTwoModeState;
}

/// Variances below this are treated as zero: a correlation with such a
/// denominator is undefined.
inline constexpr double kZeroVariance = 1e-14;

enum class Backend { kClosedForm, kFock, kGaussian, kMonteCarlo };

std::string_view backend_name(Backend backend);

/// Intensity and quadrature correlations plus the difference-noise floors
/// for one source. Any quantity may be absent: undefined (0/0) or not
/// estimated by this backend.
struct CorrelationReport {
  SourceSpec source;
  Backend backend;
  std::optional<double> c_intensity = {};   // C_I
  std::optional<double> c_quadrature = {};  // C_i
  std::optional<double> v_intensity = {};   // V_I = Var(n_c - n_d)
  std::optional<double> v_quadrature = {};  // V_i = Var(x_c - x_d)
  double se_c_intensity = 0.0;
  double se_c_quadrature = 0.0;
  double se_v_intensity = 0.0;
  double se_v_quadrature = 0.0;
};

/// Fills the quantities missing from `base` with those of `other`.
CorrelationReport merge(CorrelationReport base, const CorrelationReport& other);

std::optional<double> normalized_correlation(double numerator_cov, double var_a, double var_b);

CorrelationReport closed_forms(const SourceSpec& source);

CorrelationReport report_from_gaussian(const SourceSpec& source,
                                       const gaussian::GaussianTwoModeState& state,
                                       QuadraturePhase phase = QuadraturePhase::kIn);

CorrelationReport report_from_fock(const SourceSpec& source, const fock::TwoModeFockState& state,
                                   QuadraturePhase phase = QuadraturePhase::kIn);

/// `flip_coupling_sign` corrupts the four-port transform (negative control).
CorrelationReport correlations_via_backend(const SourceSpec& source, Backend backend,
                                           double cutoff_tolerance = 1e-10,
                                           bool flip_coupling_sign = false);

struct FigureRow {
  double n;
  std::array<std::optional<double>, 3> values;  // pdc, coherent, thermal
};

/// Curves of figures 2 (C_I), 3 (C_i), 4 (V_I / 2n) and 5 (V_i / (1/2)).
std::vector<FigureRow> figure_curves(int figure, std::span<const double> n_grid);

}  // namespace corrimg

#endif  // CORRIMG_CORRELATORS_H_
