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

#include "corrimg/validate.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>

#include "corrimg/correlators.h"
#include "corrimg/fock.h"
#include "corrimg/gaussian.h"
#include "corrimg/sampling.h"

namespace corrimg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Quantity {
  const char* name;
  std::optional<double> CorrelationReport::*value;
  double CorrelationReport::*stderr_;
};

constexpr Quantity kQuantities[] = {
    {"C_I", &CorrelationReport::c_intensity, &CorrelationReport::se_c_intensity},
    {"C_i", &CorrelationReport::c_quadrature, &CorrelationReport::se_c_quadrature},
    {"V_I", &CorrelationReport::v_intensity, &CorrelationReport::se_v_intensity},
    {"V_i", &CorrelationReport::v_quadrature, &CorrelationReport::se_v_quadrature},
};

double deviation(const std::optional<double>& got, const std::optional<double>& want) {
  if (!got && !want) return 0.0;
  if (!got || !want) return kInf;
  return std::abs(*got - *want);
}

std::string label(SourceKind kind, const char* quantity) {
  return std::string(source_name(kind)) + " " + quantity;
}

void add(std::vector<CheckResult>& out, std::string name, double dev, double tol, const char* unit) {
  out.push_back({std::move(name), dev, tol, unit, dev <= tol});
}

void exact_backend_checks(const ValidationOptions& opt, std::vector<CheckResult>& out) {
  for (SourceKind kind : kAllSources) {
    double gauss_dev[4] = {}, fock_dev[4] = {};
    double symmetry = 0.0, phase_gap = 0.0, min_nu = kInf;
    for (double n : kStandardGrid) {
      const SourceSpec src(kind, n);
      const CorrelationReport exact = closed_forms(src);
      const CorrelationReport g =
          correlations_via_backend(src, Backend::kGaussian, kFockTailTolerance, opt.inject_sign_fault);
      const CorrelationReport f =
          correlations_via_backend(src, Backend::kFock, kFockTailTolerance, opt.inject_sign_fault);
      for (int q = 0; q < 4; ++q) {
        const auto& quantity = kQuantities[q];
        gauss_dev[q] = std::max(gauss_dev[q], deviation(g.*quantity.value, exact.*quantity.value));
        fock_dev[q] = std::max(fock_dev[q], deviation(f.*quantity.value, exact.*quantity.value));
      }

      const auto state = gaussian::gaussian_from_source(src, opt.inject_sign_fault);
      const auto moments = gaussian::photon_moments(state);
      symmetry = std::max(symmetry, std::abs(moments.mean_c - moments.mean_d));
      // PDC anti-correlates the out-of-phase pair; compare strengths.
      const auto c_out = gaussian::quadrature_correlation(state, QuadraturePhase::kOut);
      const auto c_in = gaussian::quadrature_correlation(state, QuadraturePhase::kIn);
      phase_gap = std::max(phase_gap, c_out && c_in ? std::abs(std::abs(*c_out) - std::abs(*c_in))
                                                    : deviation(c_out, c_in));
      min_nu = std::min(min_nu, gaussian::symplectic_eigenvalues(state.cov())[0]);
    }
    for (int q = 0; q < 4; ++q) {
      add(out, "gaussian vs closed form: " + label(kind, kQuantities[q].name), gauss_dev[q],
          kGaussianTolerance, "abs");
      add(out, "fock vs closed form: " + label(kind, kQuantities[q].name), fock_dev[q], kFockTolerance,
          "abs");
    }
    add(out, std::string("gaussian symmetry <n_c> = <n_d>: ") + std::string(source_name(kind)), symmetry,
        1e-10, "abs");
    add(out, std::string("gaussian |C_out| = |C_in|: ") + std::string(source_name(kind)),
        phase_gap, 1e-10, "abs");
    add(out, std::string("symplectic bound nu_min >= 1/4: ") + std::string(source_name(kind)),
        std::max(0.0, gaussian::kVacuumVariance - min_nu), 1e-12, "abs");
  }
}

void monte_carlo_checks(const ValidationOptions& opt, std::vector<CheckResult>& out) {
  std::uint64_t stream = 0;
  for (SourceKind kind : kAllSources) {
    double worst[4] = {};
    double pdc_difference = 0.0;
    for (double n : kMonteCarloGrid) {
      const SourceSpec src(kind, n);
      const RngConfig rng{opt.seed + stream++, opt.shards};
      const CountRecord counts = sample_counts(src, kMonteCarloShots, rng);
      const QuadratureRecord quads =
          sample_quadratures(src, QuadraturePhase::kIn, kMonteCarloShots, RngConfig{rng.seed + 1000, opt.shards});
      const CorrelationReport mc = merge(estimate_report(counts), estimate_report(quads));
      const CorrelationReport exact = closed_forms(src);
      for (int q = 0; q < 4; ++q) {
        const auto& quantity = kQuantities[q];
        const double dev = deviation(mc.*quantity.value, exact.*quantity.value);
        // Exactly reproduced quantities carry zero stderr.
        const double se = mc.*quantity.stderr_;
        worst[q] = std::max(worst[q], dev <= 1e-12 ? 0.0 : (se > 0.0 ? dev / se : kInf));
      }
      if (kind == SourceKind::kPdc) pdc_difference = std::max(pdc_difference, *mc.v_intensity);
    }
    for (int q = 0; q < 4; ++q) {
      add(out, "monte carlo vs closed form: " + label(kind, kQuantities[q].name), worst[q], kStderrBound,
          "stderr");
    }
    if (kind == SourceKind::kPdc) add(out, "monte carlo pdc count difference variance", pdc_difference, 0.0, "abs");
  }
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
  std::vector<CheckResult> out;
  exact_backend_checks(options, out);
  if (options.profile == ValidationProfile::kStrict) monte_carlo_checks(options, out);
  return out;
}

bool all_passed(std::span<const CheckResult> checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void print_checks(std::span<const CheckResult> checks, std::ostream& out) {
  char line[256];
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%s  %-58s deviation=%.3e %s (tol %.1e)\n", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.deviation, c.unit.c_str(), c.tolerance);
    out << line;
  }
  const auto failed = std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; });
  out << checks.size() - failed << "/" << checks.size() << " checks passed\n";
}

}  // namespace corrimg
