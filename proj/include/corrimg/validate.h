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

#ifndef CORRIMG_VALIDATE_H_
#define CORRIMG_VALIDATE_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace corrimg {

enum class ValidationProfile { kStrict, kFast };

struct ValidationOptions {
  ValidationProfile profile = ValidationProfile::kStrict;
  std::uint64_t seed = 20260101;
  int shards = 1;
  /// Builds the PDC states with the wrong four-port coupling sign. The suite
  /// must then fail.
  bool inject_sign_fault = false;
};

struct CheckResult {
  std::string name;
  double deviation;   // observed, in `unit`
  double tolerance;   // pass iff deviation <= tolerance
  std::string unit;   // "abs" or "stderr"
  bool passed;
};

/// Grid of mean photon numbers used by the cross-backend checks.
inline constexpr double kStandardGrid[] = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
inline constexpr double kMonteCarloGrid[] = {0.5, 1.0, 2.0};
inline constexpr std::int64_t kMonteCarloShots = 1'000'000;
inline constexpr double kGaussianTolerance = 1e-12;
inline constexpr double kFockTolerance = 1e-8;
inline constexpr double kFockTailTolerance = 1e-10;
inline constexpr double kStderrBound = 5.0;

std::vector<CheckResult> run_validation(const ValidationOptions& options);

bool all_passed(std::span<const CheckResult> checks);

void print_checks(std::span<const CheckResult> checks, std::ostream& out);

}  // namespace corrimg

#endif  // CORRIMG_VALIDATE_H_
