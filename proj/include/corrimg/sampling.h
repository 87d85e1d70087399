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

#ifndef CORRIMG_SAMPLING_H_
#define CORRIMG_SAMPLING_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "corrimg/correlators.h"
#include "corrimg/source.h"

namespace corrimg {

inline constexpr std::int64_t kMaxShots = 1'000'000'000;
inline constexpr int kBatchCount = 100;

struct RngConfig {
  std::uint64_t seed = 0;
  int shards = 1;
};

using Engine = std::mt19937_64;

/// Independent engine for substream `stream` of `seed`.
Engine make_engine(std::uint64_t seed, std::uint64_t stream);

struct CountRecord {
  SourceSpec source;
  std::vector<std::uint32_t> counts_c;
  std::vector<std::uint32_t> counts_d;

  std::int64_t shots() const { return static_cast<std::int64_t>(counts_c.size()); }
};

struct QuadratureRecord {
  SourceSpec source;
  QuadraturePhase phase;
  std::vector<double> q_c;
  std::vector<double> q_d;

  std::int64_t shots() const { return static_cast<std::int64_t>(q_c.size()); }
};

/// Draws one (n_c, n_d) photon-count pair of the source from `engine`.
class CountSampler {
 public:
  explicit CountSampler(const SourceSpec& source);
  std::pair<std::uint32_t, std::uint32_t> operator()(Engine& engine);

 private:
  SourceSpec source_;
  std::geometric_distribution<std::uint32_t> geometric_;
  std::poisson_distribution<std::uint32_t> poisson_;
  std::normal_distribution<double> amplitude_;
};

CountRecord sample_counts(const SourceSpec& source, std::int64_t shots, const RngConfig& rng);

QuadratureRecord sample_quadratures(const SourceSpec& source, QuadraturePhase phase,
                                    std::int64_t shots, const RngConfig& rng);

/// Point estimate plus batch-means standard error.
struct Estimate {
  std::optional<double> value;
  double stderr_ = 0.0;
};

/// Applies `statistic` to the whole sample for the point estimate and to each
/// of kBatchCount contiguous batches for the standard error. Batches whose
/// statistic is undefined are left out of the spread.
Estimate batch_means(std::int64_t shots,
                     const std::function<std::optional<double>(std::int64_t, std::int64_t)>& statistic);

struct SampleMoments {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  double cov = 0.0;
};

/// Plug-in (1/N) moments over [begin, end).
template <typename T>
SampleMoments sample_moments(std::span<const T> a, std::span<const T> b, std::int64_t begin,
                             std::int64_t end);

CorrelationReport estimate_report(const CountRecord& counts);
CorrelationReport estimate_report(const QuadratureRecord& quadratures);

void write_csv(const CountRecord& record, std::ostream& out);
void write_csv(const QuadratureRecord& record, std::ostream& out);

}  // namespace corrimg

#endif  // CORRIMG_SAMPLING_H_
