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
#include <cstdio>
#include <future>
#include <ostream>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "corrimg/gaussian.h"

namespace corrimg {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_shots(std::int64_t shots) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (shots > kMaxShots) throw std::length_error("shot budget exceeded");
}

// Runs fill(shard, begin, end) for each shard's contiguous shot range.
template <typename Fill>
void for_each_shard(std::int64_t shots, int shards, Fill fill) {
  if (shards < 1) throw std::invalid_argument("shards must be >= 1");
  std::vector<std::future<void>> jobs;
  for (int s = 0; s < shards; ++s) {
    const std::int64_t begin = shots * s / shards;
    const std::int64_t end = shots * (s + 1) / shards;
    if (shards == 1) {
      fill(s, begin, end);
    } else {
      jobs.push_back(std::async(std::launch::async, fill, s, begin, end));
    }
  }
  for (auto& j : jobs) j.get();
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Engine make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{splitmix64(seed), splitmix64(seed ^ splitmix64(stream + 1)), stream};
  return Engine(seq);
}

CountSampler::CountSampler(const SourceSpec& source)
    : source_(source),
      geometric_(1.0 / (source.n_per_mode() + 1.0)),
      poisson_(source.n_per_mode() > 0.0 ? source.n_per_mode() : 1.0),
      amplitude_(0.0, std::sqrt(source.n_per_mode() > 0.0 ? source.n_per_mode() : 1.0)) {}

std::pair<std::uint32_t, std::uint32_t> CountSampler::operator()(Engine& engine) {
  const double n = source_.n_per_mode();
  if (n == 0.0) return {0, 0};
  switch (source_.kind()) {
    case SourceKind::kPdc: {
      // P(k) = n^k / (n+1)^(k+1), shared by both modes.
      const std::uint32_t k = geometric_(engine);
      return {k, k};
    }
    case SourceKind::kCoherentSplit:
      return {poisson_(engine), poisson_(engine)};
    case SourceKind::kThermalSplit: {
      // Input amplitude from the thermal P function, E|alpha|^2 = 2n. The
      // 50/50 split sends |alpha|^2/2 into each arm; counts are then
      // conditionally Poisson and independent.
      const double re = amplitude_(engine);
      const double im = amplitude_(engine);
      const double arm_intensity = 0.5 * (re * re + im * im);
      if (arm_intensity <= 0.0) return {0, 0};
      std::poisson_distribution<std::uint32_t> arm(arm_intensity);
      const std::uint32_t c = arm(engine);
      const std::uint32_t d = arm(engine);
      return {c, d};
    }
  }
  return {0, 0};
}

CountRecord sample_counts(const SourceSpec& source, std::int64_t shots, const RngConfig& rng) {
  check_shots(shots);
  CountRecord record{source, std::vector<std::uint32_t>(shots), std::vector<std::uint32_t>(shots)};
  for_each_shard(shots, rng.shards, [&](int shard, std::int64_t begin, std::int64_t end) {
    Engine engine = make_engine(rng.seed, static_cast<std::uint64_t>(shard));
    CountSampler sampler(source);
    for (std::int64_t i = begin; i < end; ++i) {
      const auto [c, d] = sampler(engine);
      record.counts_c[i] = c;
      record.counts_d[i] = d;
    }
  });
  return record;
}

QuadratureRecord sample_quadratures(const SourceSpec& source, QuadraturePhase phase,
                                    std::int64_t shots, const RngConfig& rng) {
  check_shots(shots);
  const auto state = gaussian::gaussian_from_source(source);
  const Eigen::Vector2d mean = state.marginal_mean(phase);
  const Eigen::LLT<Eigen::Matrix2d> llt(state.marginal_cov(phase));
  if (llt.info() != Eigen::Success) {
    throw std::logic_error("internal error: quadrature covariance is not positive definite");
  }
  const Eigen::Matrix2d factor = llt.matrixL();

  QuadratureRecord record{source, phase, std::vector<double>(shots), std::vector<double>(shots)};
  for_each_shard(shots, rng.shards, [&](int shard, std::int64_t begin, std::int64_t end) {
    Engine engine = make_engine(rng.seed, static_cast<std::uint64_t>(shard));
    std::normal_distribution<double> normal;
    for (std::int64_t i = begin; i < end; ++i) {
      const double z0 = normal(engine);
      const double z1 = normal(engine);
      record.q_c[i] = mean(0) + factor(0, 0) * z0;
      record.q_d[i] = mean(1) + factor(1, 0) * z0 + factor(1, 1) * z1;
    }
  });
  return record;
}

Estimate batch_means(std::int64_t shots,
                     const std::function<std::optional<double>(std::int64_t, std::int64_t)>& statistic) {
  if (shots < kBatchCount) {
    throw std::invalid_argument("batch-means estimation needs at least 100 shots");
  }
  Estimate est{statistic(0, shots), 0.0};
  std::vector<double> batch;
  batch.reserve(kBatchCount);
  for (int b = 0; b < kBatchCount; ++b) {
    const auto v = statistic(shots * b / kBatchCount, shots * (b + 1) / kBatchCount);
    if (v) batch.push_back(*v);
  }
  if (batch.size() >= 2) {
    double mean = 0.0;
    for (double v : batch) mean += v;
    mean /= batch.size();
    double ss = 0.0;
    for (double v : batch) ss += (v - mean) * (v - mean);
    est.stderr_ = std::sqrt(ss / (batch.size() - 1) / batch.size());
  }
  return est;
}

template <typename T>
SampleMoments sample_moments(std::span<const T> a, std::span<const T> b, std::int64_t begin,
                             std::int64_t end) {
  SampleMoments m;
  const double count = static_cast<double>(end - begin);
  for (std::int64_t i = begin; i < end; ++i) {
    m.mean_a += static_cast<double>(a[i]);
    m.mean_b += static_cast<double>(b[i]);
  }
  m.mean_a /= count;
  m.mean_b /= count;
  for (std::int64_t i = begin; i < end; ++i) {
    const double da = static_cast<double>(a[i]) - m.mean_a;
    const double db = static_cast<double>(b[i]) - m.mean_b;
    m.var_a += da * da;
    m.var_b += db * db;
    m.cov += da * db;
  }
  m.var_a /= count;
  m.var_b /= count;
  m.cov /= count;
  return m;
}

template SampleMoments sample_moments<std::uint32_t>(std::span<const std::uint32_t>,
                                                     std::span<const std::uint32_t>, std::int64_t,
                                                     std::int64_t);
template SampleMoments sample_moments<double>(std::span<const double>, std::span<const double>,
                                              std::int64_t, std::int64_t);

namespace {

template <typename T>
void fill_report(std::span<const T> a, std::span<const T> b, std::optional<double>& c_value,
                 double& c_se, std::optional<double>& v_value, double& v_se) {
  const auto shots = static_cast<std::int64_t>(a.size());
  const Estimate c = batch_means(shots, [&](std::int64_t begin, std::int64_t end) {
    const SampleMoments m = sample_moments(a, b, begin, end);
    return normalized_correlation(m.cov, m.var_a, m.var_b);
  });
  // Variance of the difference, accumulated directly so identical arrays
  // give exactly zero.
  const Estimate v = batch_means(shots, [&](std::int64_t begin, std::int64_t end) {
    const double count = static_cast<double>(end - begin);
    double mean = 0.0;
    for (std::int64_t i = begin; i < end; ++i) mean += static_cast<double>(a[i]) - static_cast<double>(b[i]);
    mean /= count;
    double ss = 0.0;
    for (std::int64_t i = begin; i < end; ++i) {
      const double dev = static_cast<double>(a[i]) - static_cast<double>(b[i]) - mean;
      ss += dev * dev;
    }
    return std::optional<double>(ss / count);
  });
  c_value = c.value;
  c_se = c.stderr_;
  v_value = v.value;
  v_se = v.stderr_;
}

}  // namespace

CorrelationReport estimate_report(const CountRecord& counts) {
  if (counts.counts_c.size() != counts.counts_d.size()) {
    throw std::invalid_argument("count record arms differ in length");
  }
  CorrelationReport r{counts.source, Backend::kMonteCarlo};
  fill_report<std::uint32_t>(counts.counts_c, counts.counts_d, r.c_intensity, r.se_c_intensity,
                             r.v_intensity, r.se_v_intensity);
  return r;
}

CorrelationReport estimate_report(const QuadratureRecord& quadratures) {
  if (quadratures.q_c.size() != quadratures.q_d.size()) {
    throw std::invalid_argument("quadrature record arms differ in length");
  }
  CorrelationReport r{quadratures.source, Backend::kMonteCarlo};
  fill_report<double>(quadratures.q_c, quadratures.q_d, r.c_quadrature, r.se_c_quadrature,
                      r.v_quadrature, r.se_v_quadrature);
  return r;
}

void write_csv(const CountRecord& record, std::ostream& out) {
  out << "shot_index,value_c,value_d\n";
  for (std::int64_t i = 0; i < record.shots(); ++i) {
    out << i << ',' << record.counts_c[i] << ',' << record.counts_d[i] << '\n';
  }
}

void write_csv(const QuadratureRecord& record, std::ostream& out) {
  out << "shot_index,value_c,value_d\n";
  for (std::int64_t i = 0; i < record.shots(); ++i) {
    out << i << ',' << format_double(record.q_c[i]) << ',' << format_double(record.q_d[i]) << '\n';
  }
}

}  // namespace corrimg
