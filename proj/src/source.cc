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

#include "corrimg/source.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace corrimg {

std::string_view source_name(SourceKind kind) {
  switch (kind) {
    case SourceKind::kPdc:
      return "pdc";
    case SourceKind::kCoherentSplit:
      return "coherent";
    case SourceKind::kThermalSplit:
      return "thermal";
  }
  return "?";
}

std::optional<SourceKind> parse_source(std::string_view name) {
  for (SourceKind k : kAllSources) {
    if (source_name(k) == name) return k;
  }
  return std::nullopt;
}

SourceSpec::SourceSpec(SourceKind kind, double n_per_mode) : kind_(kind), n_per_mode_(n_per_mode) {
  if (!(n_per_mode >= 0.0) || !std::isfinite(n_per_mode)) {
    throw std::invalid_argument("mean photon number per mode must be finite and >= 0");
  }
}

std::string SourceSpec::str() const {
  std::ostringstream out;
  out << source_name(kind_) << "(n=" << n_per_mode_ << ")";
  return out.str();
}

}  // namespace corrimg
