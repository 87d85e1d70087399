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

#ifndef CORRIMG_TOOLS_COMMANDS_H_
#define CORRIMG_TOOLS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corrimg/imaging.h"
#include "corrimg/validate.h"

namespace corrimg::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Flat key=value record written next to every output file.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  double wall_seconds = 0.0;

  void write(std::ostream& out) const;
};

/// 17 significant digits; round-trips doubles.
std::string format_double(double v);

std::vector<double> linear_grid(double n_min, double n_max, int points);

/// CSV text with header n,pdc,coherent,thermal; undefined values are empty.
std::string figure_csv(int figure, double n_min, double n_max, int points);

RunManifest cmd_figures(int figure, double n_min, double n_max, int points, const std::string& out_path);

int cmd_validate(const ValidationOptions& options, std::ostream& report);

struct ImageOptions {
  std::string mask = "demo-bars";
  SourceKind source = SourceKind::kPdc;
  double n = 1.0;
  std::int64_t shots = 10'000;
  ReconstructionMethod method = ReconstructionMethod::kFluctuationCorrelation;
  std::uint64_t seed = 1;
  int shards = 1;
  std::string out_prefix = "image";
};

struct ImageOutcome {
  ImagingResult result;
  std::optional<double> pearson_vs_mask;
  RunManifest manifest;
};

ImagingResult run_image(const ImageOptions& options, Image* mask_out = nullptr);
ImageOutcome cmd_image(const ImageOptions& options);

}  // namespace corrimg::cli

#endif  // CORRIMG_TOOLS_COMMANDS_H_
