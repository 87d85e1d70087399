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

#ifndef CORRIMG_PGM_H_
#define CORRIMG_PGM_H_

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace corrimg {

/// Row-major grayscale image with values in [0, 1]; pixel (x, y) is at
/// values[y * width + x].
struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

class PgmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a plain (P2) portable graymap; values are scaled by 1/maxval.
Image read_pgm(std::istream& in);
Image read_pgm_file(const std::string& path);

/// Writes a P2 graymap with maxval 255. Values are clamped to [0, 1].
void write_pgm(const Image& image, std::ostream& out);

}  // namespace corrimg

#endif  // CORRIMG_PGM_H_
