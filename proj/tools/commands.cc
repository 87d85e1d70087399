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

#include "commands.h"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "corrimg/correlators.h"

namespace corrimg::cli {
namespace {

using Clock = std::chrono::steady_clock;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out = open_output(path);
  out << contents;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void RunManifest::write(std::ostream& out) const {
  out << "command=" << command << '\n';
  for (const auto& [key, value] : parameters) out << key << '=' << value << '\n';
  out << "seed=" << seed << '\n';
  out << "tool_version=" << kToolVersion << '\n';
  for (std::size_t i = 0; i < outputs.size(); ++i) out << "output." << i << '=' << outputs[i] << '\n';
  out << "wall_seconds=" << format_double(wall_seconds) << '\n';
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> linear_grid(double n_min, double n_max, int points) {
  if (!(n_min >= 0.0) || !(n_max > n_min) || !std::isfinite(n_max)) {
    throw std::invalid_argument("need 0 <= n_min < n_max");
  }
  if (points < 2) throw std::invalid_argument("need at least 2 grid points");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = i == points - 1 ? n_max : n_min + (n_max - n_min) * i / (points - 1);
  }
  return grid;
}

std::string figure_csv(int figure, double n_min, double n_max, int points) {
  const std::vector<double> grid = linear_grid(n_min, n_max, points);
  std::ostringstream out;
  out << "n,pdc,coherent,thermal\n";
  for (const FigureRow& row : figure_curves(figure, grid)) {
    out << format_double(row.n);
    for (const auto& v : row.values) {
      out << ',';
      if (v) out << format_double(*v);
    }
    out << '\n';
  }
  return out.str();
}

RunManifest cmd_figures(int figure, double n_min, double n_max, int points, const std::string& out_path) {
  const auto start = Clock::now();
  const std::string csv = figure_csv(figure, n_min, n_max, points);
  write_file(out_path, csv);
  RunManifest m{"figures",
                {{"figure", std::to_string(figure)},
                 {"n_min", format_double(n_min)},
                 {"n_max", format_double(n_max)},
                 {"points", std::to_string(points)}},
                0,
                {out_path}};
  m.wall_seconds = seconds_since(start);
  std::ofstream mf = open_output(out_path + ".manifest");
  m.write(mf);
  return m;
}

int cmd_validate(const ValidationOptions& options, std::ostream& report) {
  const std::vector<CheckResult> checks = run_validation(options);
  report << "profile=" << (options.profile == ValidationProfile::kStrict ? "strict" : "fast")
         << " seed=" << options.seed << (options.inject_sign_fault ? " fault=four-port-sign" : "") << '\n';
  print_checks(checks, report);
  return all_passed(checks) ? 0 : 1;
}

ImagingResult run_image(const ImageOptions& options, Image* mask_out) {
  Image mask = is_demo_mask(options.mask) ? demo_mask(options.mask) : read_pgm_file(options.mask);
  const ImagingScene scene(mask, SourceSpec(options.source, options.n), options.shots,
                           RngConfig{options.seed, options.shards});
  const std::vector<CountRecord> records = simulate_scene(scene);
  if (mask_out) *mask_out = scene.mask();
  return options.method == ReconstructionMethod::kFluctuationCorrelation
             ? reconstruct_fluctuation(records, scene)
             : reconstruct_difference(records, scene);
}

ImageOutcome cmd_image(const ImageOptions& options) {
  const auto start = Clock::now();
  Image mask;
  ImagingResult result = run_image(options, &mask);

  const std::string pgm_path = options.out_prefix + ".pgm";
  const std::string csv_path = options.out_prefix + ".csv";
  const std::string manifest_path = options.out_prefix + ".manifest";
  {
    std::ofstream out = open_output(pgm_path);
    write_pgm(Image{result.width, result.height, result.estimate}, out);
  }
  {
    std::ostringstream csv;
    csv << "x,y,estimate,stderr\n";
    for (int y = 0; y < result.height; ++y) {
      for (int x = 0; x < result.width; ++x) {
        const std::size_t p = static_cast<std::size_t>(y) * result.width + x;
        csv << x << ',' << y << ',' << format_double(result.estimate[p]) << ','
            << format_double(result.stderr_[p]) << '\n';
      }
    }
    write_file(csv_path, csv.str());
  }

  const auto floor = predicted_noise_floor(SourceSpec(options.source, options.n));
  ImageOutcome outcome{std::move(result), std::nullopt, {}};
  outcome.pearson_vs_mask = pearson(outcome.result.estimate, mask.values);
  outcome.manifest = RunManifest{"image",
                                 {{"mask", options.mask},
                                  {"source", std::string(source_name(options.source))},
                                  {"n", format_double(options.n)},
                                  {"shots", std::to_string(options.shots)},
                                  {"method", std::string(method_name(options.method))},
                                  {"shards", std::to_string(options.shards)},
                                  {"predicted_V_I", format_double(floor.first)},
                                  {"predicted_V_i", format_double(floor.second)},
                                  {"summary_snr_artifact_defined", format_double(outcome.result.summary_snr)},
                                  {"pearson_vs_mask", outcome.pearson_vs_mask
                                                          ? format_double(*outcome.pearson_vs_mask)
                                                          : std::string()}},
                                 options.seed,
                                 {pgm_path, csv_path}};
  outcome.manifest.wall_seconds = seconds_since(start);
  std::ofstream mf = open_output(manifest_path);
  outcome.manifest.write(mf);
  return outcome;
}

}  // namespace corrimg::cli
