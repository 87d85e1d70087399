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

#include "corrimg/imaging.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

#include "corrimg/correlators.h"

namespace corrimg {
namespace {

// Pixel substreams live above the shard substreams used by sample_counts.
constexpr std::uint64_t kPixelStreamBase = std::uint64_t{1} << 32;

std::span<const std::uint32_t> span_of(const std::vector<std::uint32_t>& v) { return v; }

void check_records(std::span<const CountRecord> records, const ImagingScene& scene) {
  if (static_cast<int>(records.size()) != scene.pixels()) {
    throw std::invalid_argument("record count does not match the scene grid");
  }
  for (const auto& r : records) {
    if (r.counts_c.size() != r.counts_d.size() || r.shots() < kBatchCount) {
      throw std::invalid_argument("pixel records need equal arms and at least 100 shots");
    }
  }
}

double summary_snr(const ImagingResult& result, const ImagingScene& scene) {
  double total = 0.0;
  int used = 0;
  for (int p = 0; p < scene.pixels(); ++p) {
    if (!scene.signal_region()[p] || !(result.stderr_[p] > 0.0)) continue;
    total += std::abs(result.estimate[p]) / result.stderr_[p];
    ++used;
  }
  return used ? total / used : 0.0;
}

// Mean of (d - c) over [begin, end).
double mean_difference(const CountRecord& r, std::int64_t begin, std::int64_t end) {
  double sum = 0.0;
  for (std::int64_t i = begin; i < end; ++i) {
    sum += static_cast<double>(r.counts_d[i]) - static_cast<double>(r.counts_c[i]);
  }
  return sum / static_cast<double>(end - begin);
}

std::pair<std::uint32_t, std::uint32_t> draw_thinned(CountSampler& sampler, Engine& engine, double t) {
  auto [c, d] = sampler(engine);
  if (t < 1.0 && c > 0) c = std::binomial_distribution<std::uint32_t>(c, t)(engine);
  return {c, d};
}

}  // namespace

ImagingScene::ImagingScene(Image mask, SourceSpec source, std::int64_t shots_per_pixel, RngConfig rng)
    : mask_(std::move(mask)), source_(source), shots_per_pixel_(shots_per_pixel), rng_(rng) {
  if (mask_.width < 1 || mask_.height < 1) throw std::invalid_argument("scene grid must be non-empty");
  if (mask_.width > kMaxSceneSide || mask_.height > kMaxSceneSide) {
    throw std::invalid_argument("scene grid exceeds 256 x 256");
  }
  if (static_cast<int>(mask_.values.size()) != pixels()) {
    throw std::invalid_argument("mask size does not match its dimensions");
  }
  if (shots_per_pixel_ < 1) throw std::invalid_argument("shots per pixel must be >= 1");
  if (shots_per_pixel_ > kMaxSceneSamples / pixels()) {
    throw std::length_error("scene exceeds the 1e9 total sample budget");
  }
  if (rng_.shards < 1) throw std::invalid_argument("shards must be >= 1");
  for (double& v : mask_.values) v = std::isfinite(v) ? std::clamp(v, 0.0, 1.0) : 0.0;
  signal_region_.resize(pixels());
  for (int p = 0; p < pixels(); ++p) signal_region_[p] = mask_.values[p] >= 0.5;
}

void ImagingScene::set_signal_region(std::vector<bool> region) {
  if (static_cast<int>(region.size()) != pixels()) {
    throw std::invalid_argument("signal region size does not match the scene grid");
  }
  signal_region_ = std::move(region);
}

std::string_view method_name(ReconstructionMethod method) {
  return method == ReconstructionMethod::kFluctuationCorrelation ? "fluctuation" : "difference";
}

std::optional<ReconstructionMethod> parse_method(std::string_view name) {
  if (name == "fluctuation") return ReconstructionMethod::kFluctuationCorrelation;
  if (name == "difference") return ReconstructionMethod::kDifferenceSignal;
  return std::nullopt;
}

void thin_object_arm(CountRecord& record, double transmittance, Engine& engine) {
  if (transmittance >= 1.0) return;
  for (auto& c : record.counts_c) {
    if (c == 0) continue;
    std::binomial_distribution<std::uint32_t> survive(c, transmittance);
    c = survive(engine);
  }
}

std::vector<CountRecord> simulate_scene(const ImagingScene& scene) {
  const int pixels = scene.pixels();
  const int shards = std::min(scene.rng().shards, pixels);
  std::vector<CountRecord> records(pixels, CountRecord{scene.source(), {}, {}});
  auto run_shard = [&](int shard) {
    CountSampler sampler(scene.source());
    for (int p = shard; p < pixels; p += shards) {
      Engine engine = make_engine(scene.rng().seed, kPixelStreamBase + static_cast<std::uint64_t>(p));
      CountRecord& r = records[p];
      r.counts_c.resize(scene.shots_per_pixel());
      r.counts_d.resize(scene.shots_per_pixel());
      const double t = scene.mask().values[p];
      for (std::int64_t i = 0; i < scene.shots_per_pixel(); ++i) {
        const auto [c, d] = draw_thinned(sampler, engine, t);
        r.counts_c[i] = c;
        r.counts_d[i] = d;
      }
    }
  };
  if (shards == 1) {
    run_shard(0);
  } else {
    std::vector<std::future<void>> jobs;
    for (int s = 0; s < shards; ++s) jobs.push_back(std::async(std::launch::async, run_shard, s));
    for (auto& j : jobs) j.get();
  }
  return records;
}

ImagingResult reconstruct_fluctuation(std::span<const CountRecord> records, const ImagingScene& scene) {
  check_records(records, scene);
  if (scene.mask().values[0] != 1.0) {
    throw std::invalid_argument("calibration pixel (0, 0) must have transmittance 1");
  }
  ImagingResult result{scene.width(), scene.height(), ReconstructionMethod::kFluctuationCorrelation,
                       std::vector<double>(scene.pixels()), std::vector<double>(scene.pixels())};
  for (int p = 0; p < scene.pixels(); ++p) {
    const CountRecord& r = records[p];
    const Estimate cov = batch_means(r.shots(), [&](std::int64_t begin, std::int64_t end) {
      return std::optional<double>(
          sample_moments(span_of(r.counts_c), span_of(r.counts_d), begin, end).cov);
    });
    result.estimate[p] = *cov.value;
    result.stderr_[p] = cov.stderr_;
  }
  const double calibration = result.estimate[0];
  const double scale = calibration != 0.0 ? 1.0 / calibration : 1.0;
  for (int p = 0; p < scene.pixels(); ++p) {
    result.estimate[p] *= scale;
    result.stderr_[p] *= std::abs(scale);
  }
  result.summary_snr = summary_snr(result, scene);
  return result;
}

ImagingResult reconstruct_difference(std::span<const CountRecord> records, const ImagingScene& scene) {
  check_records(records, scene);
  const double n = scene.source().n_per_mode();
  if (n <= 0.0) throw std::invalid_argument("difference reconstruction needs a source with n > 0");
  ImagingResult result{scene.width(), scene.height(), ReconstructionMethod::kDifferenceSignal,
                       std::vector<double>(scene.pixels()), std::vector<double>(scene.pixels())};
  for (int p = 0; p < scene.pixels(); ++p) {
    const CountRecord& r = records[p];
    const Estimate diff = batch_means(r.shots(), [&](std::int64_t begin, std::int64_t end) {
      return std::optional<double>(mean_difference(r, begin, end));
    });
    result.estimate[p] = 1.0 - *diff.value / n;
    result.stderr_[p] = diff.stderr_ / n;
  }
  result.summary_snr = summary_snr(result, scene);
  return result;
}

std::pair<double, double> predicted_noise_floor(const SourceSpec& source) {
  const CorrelationReport r = closed_forms(source);
  return {*r.v_intensity, *r.v_quadrature};
}

std::optional<std::int64_t> shots_to_detect(const SourceSpec& source, double absorption, double sigma,
                                            std::uint64_t seed, std::int64_t max_shots) {
  if (!(absorption > 0.0 && absorption <= 1.0)) throw std::invalid_argument("absorption must lie in (0, 1]");
  if (max_shots < kBatchCount || max_shots > kMaxShots) {
    throw std::invalid_argument("max_shots must lie in [100, 1e9]");
  }
  const double t = 1.0 - absorption;
  Engine engine = make_engine(seed, kPixelStreamBase);
  CountSampler sampler(source);
  CountRecord record{source, {}, {}};
  for (std::int64_t shots = kBatchCount; shots <= max_shots; shots *= 2) {
    while (record.shots() < shots) {
      const auto [c, d] = draw_thinned(sampler, engine, t);
      record.counts_c.push_back(c);
      record.counts_d.push_back(d);
    }
    const Estimate diff = batch_means(shots, [&](std::int64_t begin, std::int64_t end) {
      return std::optional<double>(mean_difference(record, begin, end));
    });
    if (diff.stderr_ > 0.0 && *diff.value / diff.stderr_ >= sigma) return shots;
    if (diff.stderr_ == 0.0 && *diff.value > 0.0) return shots;
  }
  return std::nullopt;
}

std::optional<double> pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("pearson needs equal-length data");
  const SampleMoments m = sample_moments(a, b, 0, static_cast<std::int64_t>(a.size()));
  return normalized_correlation(m.cov, m.var_a, m.var_b);
}

bool is_demo_mask(std::string_view name) { return name == "demo-bars"; }

Image demo_mask(std::string_view name) {
  if (!is_demo_mask(name)) throw std::invalid_argument("unknown built-in mask");
  constexpr int kSide = 24;
  constexpr int kBar = 3;
  Image img{kSide, kSide, std::vector<double>(kSide * kSide)};
  for (int y = 0; y < kSide; ++y) {
    for (int x = 0; x < kSide; ++x) img.values[y * kSide + x] = (x / kBar) % 2 == 0 ? 1.0 : 0.0;
  }
  img.values[0] = 1.0;
  return img;
}

}  // namespace corrimg
