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

#include "corrimg/sampling.h"

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace corrimg {
namespace {

double mean_of(const std::vector<std::uint32_t>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double var_of(const std::vector<std::uint32_t>& v) {
  const double m = mean_of(v);
  double ss = 0.0;
  for (auto x : v) ss += (x - m) * (x - m);
  return ss / static_cast<double>(v.size());
}

TEST(MakeEngine, StreamsDiffer) {
  Engine a = make_engine(7, 0);
  Engine b = make_engine(7, 1);
  Engine c = make_engine(7, 0);
  EXPECT_NE(a(), b());
  EXPECT_EQ(make_engine(7, 0)(), c());
}

TEST(SampleCounts, PdcArmsAreIdentical) {
  const auto rec = sample_counts(SourceSpec(SourceKind::kPdc, 1.0), 10'000, {3, 1});
  EXPECT_EQ(rec.counts_c, rec.counts_d);
  EXPECT_NEAR(mean_of(rec.counts_c), 1.0, 0.05);
}

TEST(SampleCounts, VacuumGivesZeros) {
  for (SourceKind k : kAllSources) {
    const auto rec = sample_counts(SourceSpec(k, 0.0), 500, {1, 1});
    EXPECT_EQ(std::accumulate(rec.counts_c.begin(), rec.counts_c.end(), 0u), 0u);
  }
}

TEST(SampleCounts, DeterministicForFixedSeedAndShards) {
  const SourceSpec src(SourceKind::kThermalSplit, 1.0);
  const auto a = sample_counts(src, 5'000, {42, 3});
  const auto b = sample_counts(src, 5'000, {42, 3});
  EXPECT_EQ(a.counts_c, b.counts_c);
  EXPECT_EQ(a.counts_d, b.counts_d);
  const auto c = sample_counts(src, 5'000, {43, 3});
  EXPECT_NE(a.counts_c, c.counts_c);
}

TEST(SampleCounts, ThermalMarginalVariance) {
  // Bose-Einstein marginal: Var(n_c) = n(n + 1).
  const auto rec = sample_counts(SourceSpec(SourceKind::kThermalSplit, 1.0), 400'000, {11, 4});
  EXPECT_NEAR(mean_of(rec.counts_c), 1.0, 0.02);
  EXPECT_NEAR(var_of(rec.counts_c), 2.0, 0.06);
  EXPECT_NEAR(var_of(rec.counts_d), 2.0, 0.06);
}

TEST(SampleCounts, CoherentMarginalIsPoisson) {
  const auto rec = sample_counts(SourceSpec(SourceKind::kCoherentSplit, 2.0), 200'000, {5, 2});
  EXPECT_NEAR(mean_of(rec.counts_c), 2.0, 0.03);
  EXPECT_NEAR(var_of(rec.counts_c), 2.0, 0.06);
}

TEST(SampleCounts, RejectsBadShotCounts) {
  const SourceSpec src(SourceKind::kPdc, 1.0);
  EXPECT_THROW(sample_counts(src, 0, {1, 1}), std::invalid_argument);
  EXPECT_THROW(sample_counts(src, kMaxShots + 1, {1, 1}), std::length_error);
  EXPECT_THROW(sample_counts(src, 100, {1, 0}), std::invalid_argument);
}

TEST(EstimateReport, ThermalIntensityConverges) {
  const auto r = estimate_report(sample_counts(SourceSpec(SourceKind::kThermalSplit, 1.0), 200'000, {9, 2}));
  ASSERT_TRUE(r.c_intensity.has_value());
  EXPECT_LT(std::abs(*r.c_intensity - 0.5), 5 * r.se_c_intensity);
  EXPECT_LT(std::abs(*r.v_intensity - 2.0), 5 * r.se_v_intensity);
}

TEST(EstimateReport, PdcDifferenceVarianceIsExactlyZero) {
  const auto r = estimate_report(sample_counts(SourceSpec(SourceKind::kPdc, 2.0), 50'000, {1, 2}));
  EXPECT_EQ(*r.v_intensity, 0.0);
  EXPECT_EQ(r.se_v_intensity, 0.0);
  EXPECT_DOUBLE_EQ(*r.c_intensity, 1.0);
}

TEST(EstimateReport, StandardErrorShrinksWithShots) {
  const SourceSpec src(SourceKind::kThermalSplit, 1.0);
  const auto small = estimate_report(sample_counts(src, 50'000, {21, 1}));
  const auto large = estimate_report(sample_counts(src, 200'000, {22, 1}));
  const double ratio = small.se_c_intensity / large.se_c_intensity;
  EXPECT_GT(ratio, 1.5);
  EXPECT_LT(ratio, 2.7);
}

TEST(EstimateReport, TooFewShotsForBatches) {
  const auto rec = sample_counts(SourceSpec(SourceKind::kPdc, 1.0), 99, {1, 1});
  EXPECT_THROW(estimate_report(rec), std::invalid_argument);
}

TEST(BatchMeans, ConstantStatisticHasZeroError) {
  const Estimate e = batch_means(1000, [](std::int64_t, std::int64_t) { return std::optional<double>(2.5); });
  EXPECT_EQ(*e.value, 2.5);
  EXPECT_EQ(e.stderr_, 0.0);
}

TEST(SampleQuadratures, PdcMatchesClosedForm) {
  const SourceSpec src(SourceKind::kPdc, 1.0);
  const auto r = estimate_report(sample_quadratures(src, QuadraturePhase::kIn, 200'000, {4, 2}));
  const auto want = closed_forms(src);
  EXPECT_LT(std::abs(*r.c_quadrature - *want.c_quadrature), 5 * r.se_c_quadrature);
  EXPECT_LT(std::abs(*r.v_quadrature - *want.v_quadrature), 5 * r.se_v_quadrature);
}

TEST(SampleQuadratures, OutOfPhaseAntiCorrelatedForPdc) {
  const auto r = estimate_report(
      sample_quadratures(SourceSpec(SourceKind::kPdc, 1.0), QuadraturePhase::kOut, 100'000, {4, 1}));
  EXPECT_LT(std::abs(*r.c_quadrature + 2 * std::sqrt(2.0) / 3), 5 * r.se_c_quadrature);
}

TEST(SampleQuadratures, CoherentMeanAndVariance) {
  const auto rec = sample_quadratures(SourceSpec(SourceKind::kCoherentSplit, 1.0), QuadraturePhase::kIn,
                                      100'000, {6, 1});
  const double m = std::accumulate(rec.q_c.begin(), rec.q_c.end(), 0.0) / rec.shots();
  EXPECT_NEAR(m, 1.0, 0.01);
  const auto r = estimate_report(rec);
  EXPECT_LT(std::abs(*r.v_quadrature - 0.5), 5 * r.se_v_quadrature);
  EXPECT_LT(std::abs(*r.c_quadrature), 5 * r.se_c_quadrature);
}

TEST(WriteCsv, CountFormat) {
  CountRecord rec{SourceSpec(SourceKind::kPdc, 1.0), {1, 0}, {1, 0}};
  std::ostringstream out;
  write_csv(rec, out);
  EXPECT_EQ(out.str(), "shot_index,value_c,value_d\n0,1,1\n1,0,0\n");
}

TEST(WriteCsv, QuadratureRoundTrips) {
  QuadratureRecord rec{SourceSpec(SourceKind::kPdc, 1.0), QuadraturePhase::kIn, {0.1}, {-1.0 / 3.0}};
  std::ostringstream out;
  write_csv(rec, out);
  std::istringstream in(out.str());
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  EXPECT_EQ(header, "shot_index,value_c,value_d");
  const auto first = line.find(',');
  const auto second = line.find(',', first + 1);
  EXPECT_EQ(std::stod(line.substr(first + 1, second - first - 1)), 0.1);
  EXPECT_EQ(std::stod(line.substr(second + 1)), -1.0 / 3.0);
}

}  // namespace
}  // namespace corrimg
