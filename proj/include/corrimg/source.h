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

#ifndef CORRIMG_SOURCE_H_
#define CORRIMG_SOURCE_H_

#include <optional>
#include <string>
#include <string_view>

namespace corrimg {

enum class SourceKind { kPdc, kCoherentSplit, kThermalSplit };

/// In-phase (c + c^dag)/2 or out-of-phase (c - c^dag)/2i field quadrature.
enum class QuadraturePhase { kIn, kOut };

std::string_view source_name(SourceKind kind);
std::optional<SourceKind> parse_source(std::string_view name);

/// One of the three correlated-light sources, parameterized by the mean
/// photon number in each of the two output modes.
class SourceSpec {
 public:
  SourceSpec(SourceKind kind, double n_per_mode);

  SourceKind kind() const { return kind_; }
  double n_per_mode() const { return n_per_mode_; }

  /// Power gain of the parametric amplifier, G = n + 1.
  double pdc_gain() const { return n_per_mode_ + 1.0; }
  /// |alpha|^2 of the coherent input before the 50/50 split.
  double coherent_input_intensity() const { return 2.0 * n_per_mode_; }
  /// Mean photon number of the thermal input before the 50/50 split.
  double thermal_input_mean() const { return 2.0 * n_per_mode_; }

  std::string str() const;

 private:
  SourceKind kind_;
  double n_per_mode_;
};

inline constexpr SourceKind kAllSources[] = {SourceKind::kPdc, SourceKind::kCoherentSplit,
                                             SourceKind::kThermalSplit};

}  // namespace corrimg

#endif  // CORRIMG_SOURCE_H_
