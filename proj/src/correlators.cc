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

#include "corrimg/correlators.h"

#include <cmath>
#include <stdexcept>

#include "corrimg/fock.h"
#include "corrimg/gaussian.h"

namespace corrimg {

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::kClosedForm:
      return "closed_form";
    case Backend::kFock:
      return "fock";
    case Backend::kGaussian:
      return "gaussian";
    case Backend::kMonteCarlo:
      return "monte_carlo";
  }
  return "?";
}

CorrelationReport merge(CorrelationReport base, const CorrelationReport& other) {
  if (!base.c_intensity && other.c_intensity) {
    base.c_intensity = other.c_intensity;
    base.se_c_intensity = other.se_c_intensity;
  }
  if (!base.c_quadrature && other.c_quadrature) {
    base.c_quadrature = other.c_quadrature;
    base.se_c_quadrature = other.se_c_quadrature;
  }
  if (!base.v_intensity && other.v_intensity) {
    base.v_intensity = other.v_intensity;
    base.se_v_intensity = other.se_v_intensity;
  }
  if (!base.v_quadrature && other.v_quadrature) {
    base.v_quadrature = other.v_quadrature;
    base.se_v_quadrature = other.se_v_quadrature;
  }
  return base;
}

std::optional<double> normalized_correlation(double numerator_cov, double var_a, double var_b) {
  if (var_a < kZeroVariance || var_b < kZeroVariance) return std::nullopt;
  return numerator_cov / std::sqrt(var_a * var_b);
}

CorrelationReport closed_forms(const SourceSpec& source) {
  const double n = source.n_per_mode();
  CorrelationReport r{source, Backend::kClosedForm};
  switch (source.kind()) {
    case SourceKind::kPdc: {
      const double root = std::sqrt(n * (n + 1.0));
      if (n > 0.0) r.c_intensity = 1.0;
      r.c_quadrature = 2.0 * root / (2.0 * n + 1.0);
      r.v_intensity = 0.0;
      r.v_quadrature = 0.5 * (2.0 * n + 1.0 - 2.0 * root);
      break;
    }
    case SourceKind::kCoherentSplit:
      r.c_intensity = 0.0;
      r.c_quadrature = 0.0;
      r.v_intensity = 2.0 * n;
      r.v_quadrature = 0.5;
      break;
    case SourceKind::kThermalSplit:
      r.c_intensity = n / (n + 1.0);
      r.c_quadrature = 2.0 * n / (2.0 * n + 1.0);
      r.v_intensity = 2.0 * n;
      r.v_quadrature = 0.5;
      break;
  }
  return r;
}

CorrelationReport report_from_gaussian(const SourceSpec& source,
                                       const gaussian::GaussianTwoModeState& state,
                                       QuadraturePhase phase) {
  const auto m = gaussian::photon_moments(state);
  const auto v = gaussian::difference_variances(state, phase);
  CorrelationReport r{source, Backend::kGaussian};
  r.c_intensity = normalized_correlation(m.cov_cd, m.var_c, m.var_d);
  r.c_quadrature = gaussian::quadrature_correlation(state, phase);
  r.v_intensity = v.intensity;
  r.v_quadrature = v.quadrature;
  return r;
}

CorrelationReport report_from_fock(const SourceSpec& source, const fock::TwoModeFockState& state,
                                   QuadraturePhase phase) {
  using fock::ModeOperator;
  const int dim = state.dim();
  const ModeOperator id = ModeOperator::identity(dim);
  const ModeOperator num = ModeOperator::number(dim);
  const ModeOperator num2 = num * num;
  const ModeOperator q = ModeOperator::quadrature(dim, phase);
  const ModeOperator q2 = ModeOperator::quadrature_squared(dim, phase);
  auto ev = [&](const ModeOperator& c, const ModeOperator& d) {
    return fock::expectation(state, c, d).real();
  };

  const double nc = ev(num, id), nd = ev(id, num);
  const double var_nc = ev(num2, id) - nc * nc;
  const double var_nd = ev(id, num2) - nd * nd;
  const double cov_n = ev(num, num) - nc * nd;

  const double qc = ev(q, id), qd = ev(id, q);
  const double var_qc = ev(q2, id) - qc * qc;
  const double var_qd = ev(id, q2) - qd * qd;
  const double cov_q = ev(q, q) - qc * qd;

  CorrelationReport r{source, Backend::kFock};
  r.c_intensity = normalized_correlation(cov_n, var_nc, var_nd);
  r.c_quadrature = normalized_correlation(cov_q, var_qc, var_qd);
  r.v_intensity = var_nc + var_nd - 2.0 * cov_n;
  r.v_quadrature = var_qc + var_qd - 2.0 * cov_q;
  return r;
}

CorrelationReport correlations_via_backend(const SourceSpec& source, Backend backend,
                                           double cutoff_tolerance, bool flip_coupling_sign) {
  switch (backend) {
    case Backend::kGaussian:
      return report_from_gaussian(source, gaussian::gaussian_from_source(source, flip_coupling_sign));
    case Backend::kFock: {
      const auto cutoff = fock::choose_moment_cutoff(source, cutoff_tolerance);
      return report_from_fock(source, fock::make_source_state(source, cutoff, flip_coupling_sign));
    }
    case Backend::kClosedForm:
      return closed_forms(source);
    case Backend::kMonteCarlo:
      break;
  }
  throw std::invalid_argument("correlations_via_backend supports the fock and gaussian backends");
}

std::vector<FigureRow> figure_curves(int figure, std::span<const double> n_grid) {
  if (figure < 2 || figure > 5) throw std::invalid_argument("figure must be 2, 3, 4 or 5");
  std::vector<FigureRow> rows;
  rows.reserve(n_grid.size());
  for (double n : n_grid) {
    if (!(n >= 0.0)) throw std::invalid_argument("figure grid values must be >= 0");
    FigureRow row{n, {}};
    for (std::size_t s = 0; s < 3; ++s) {
      const CorrelationReport r = closed_forms(SourceSpec(kAllSources[s], n));
      std::optional<double> value;
      switch (figure) {
        case 2:
          value = r.c_intensity;
          break;
        case 3:
          value = r.c_quadrature;
          break;
        case 4:
          // Normalized to the two-mode intensity SQL 2n; 0/0 at n = 0.
          if (n > 0.0) value = *r.v_intensity / (2.0 * n);
          break;
        case 5:
          // Normalized to the coherent quadrature floor 1/2.
          value = *r.v_quadrature / 0.5;
          break;
      }
      row.values[s] = value;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace corrimg
