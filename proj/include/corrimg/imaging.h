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

#ifndef CORRIMG_IMAGING_H_
#define CORRIMG_IMAGING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "corrimg/pgm.h"
#include "corrimg/sampling.h"
#include "corrimg/source.h"

// Correlated-imaging experiment: every pixel is one pair of correlated modes;
// the object arm (mode c) passes an absorbing mask, the reference arm (mode
// d) does not.
namespace corrimg {

inline constexpr int kMaxSceneSide = 256;
inline constexpr std::int64_t kMaxSceneSamples = 1'000'000'000;

class ImagingScene {
 public:
  /// Mask values are clamped to [0, 1]. Pixel (0, 0) is the calibration
  /// pixel used by fluctuation reconstruction.
  ImagingScene(Image mask, SourceSpec source, std::int64_t shots_per_pixel, RngConfig rng);

  int width() const { return mask_.width; }
  int height() const { return mask_.height; }
  int pixels() const { return mask_.width * mask_.height; }
  const Image& mask() const { return mask_; }
  const SourceSpec& source() const { return source_; }
  std::int64_t shots_per_pixel() const { return shots_per_pixel_; }
  const RngConfig& rng() const { return rng_; }

  /// Pixels averaged into the summary SNR: mask >= 0.5 unless overridden.
  const std::vector<bool>& signal_region() const { return signal_region_; }
  void set_signal_region(std::vector<bool> region);

 private:
  Image mask_;
  SourceSpec source_;
  std::int64_t shots_per_pixel_;
  RngConfig rng_;
  std::vector<bool> signal_region_;
};

enum class ReconstructionMethod { kFluctuationCorrelation, kDifferenceSignal };

std::string_view method_name(ReconstructionMethod method);
std::optional<ReconstructionMethod> parse_method(std::string_view name);

struct ImagingResult {
  int width = 0;
  int height = 0;
  ReconstructionMethod method;
  std::vector<double> estimate;
  std::vector<double> stderr_;
  /// Mean of |estimate| / stderr over the scene's signal region (pixels with
  /// zero stderr are skipped). An artifact-defined figure of merit.
  double summary_snr = 0.0;
};

/// Count records per pixel, row-major. The object-arm count is binomially
/// thinned by the pixel transmittance.
std::vector<CountRecord> simulate_scene(const ImagingScene& scene);

/// Per-pixel cov(n_c, n_d), scaled by the calibration pixel's covariance.
ImagingResult reconstruct_fluctuation(std::span<const CountRecord> records, const ImagingScene& scene);

/// Per-pixel transmittance estimate 1 - mean(n_d - n_c) / n.
ImagingResult reconstruct_difference(std::span<const CountRecord> records, const ImagingScene& scene);

/// (V_I, V_i) closed-form noise floors for annotating results.
std::pair<double, double> predicted_noise_floor(const SourceSpec& source);

/// Binomial thinning of one count record's object arm.
void thin_object_arm(CountRecord& record, double transmittance, Engine& engine);

/// Smallest shot count on the ladder 100 * 2^k (k >= 0, up to max_shots) at
/// which a single pixel of transmittance 1 - absorption shows
/// mean(n_d - n_c) / stderr >= sigma. Uses prefixes of one seeded stream.
std::optional<std::int64_t> shots_to_detect(const SourceSpec& source, double absorption, double sigma,
                                            std::uint64_t seed,
                                            std::int64_t max_shots = std::int64_t{1} << 24);

std::optional<double> pearson(std::span<const double> a, std::span<const double> b);

/// Built-in masks. "demo-bars": 24 x 24 vertical bars of width 3, alternating
/// transmittance 1 and 0, with the calibration pixel forced to 1.
Image demo_mask(std::string_view name);
bool is_demo_mask(std::string_view name);

}  // namespace corrimg

#endif  // CORRIMG_IMAGING_H_
