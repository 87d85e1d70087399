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

#include "corrimg/pgm.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace corrimg {
namespace {

// Next whitespace-delimited token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string token;
  char ch;
  while (in.get(ch)) {
    if (ch == '#') {
      std::string ignored;
      std::getline(in, ignored);
      if (!token.empty()) break;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(ch);
  }
  return token;
}

long parse_int(const std::string& token, const char* what) {
  if (token.empty()) throw PgmError(std::string("PGM: missing ") + what);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size()) throw PgmError(std::string("PGM: bad ") + what + " '" + token + "'");
  return v;
}

}  // namespace

Image read_pgm(std::istream& in) {
  if (next_token(in) != "P2") throw PgmError("PGM: expected plain 'P2' magic");
  const long width = parse_int(next_token(in), "width");
  const long height = parse_int(next_token(in), "height");
  const long maxval = parse_int(next_token(in), "maxval");
  if (width <= 0 || height <= 0) throw PgmError("PGM: width and height must be positive");
  if (width > 65535 || height > 65535) throw PgmError("PGM: image too large");
  if (maxval <= 0 || maxval > 65535) throw PgmError("PGM: maxval must lie in [1, 65535]");

  Image img{static_cast<int>(width), static_cast<int>(height), {}};
  img.values.reserve(static_cast<std::size_t>(width * height));
  for (long i = 0; i < width * height; ++i) {
    const long v = parse_int(next_token(in), "pixel value");
    if (v < 0 || v > maxval) throw PgmError("PGM: pixel value outside [0, maxval]");
    img.values.push_back(static_cast<double>(v) / maxval);
  }
  return img;
}

Image read_pgm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PgmError("PGM: cannot open '" + path + "'");
  return read_pgm(in);
}

void write_pgm(const Image& image, std::ostream& out) {
  out << "P2\n" << image.width << ' ' << image.height << "\n255\n";
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const double raw = image.at(x, y);
      const double v = std::isfinite(raw) ? std::clamp(raw, 0.0, 1.0) : 0.0;
      out << (x ? " " : "") << static_cast<int>(std::lround(v * 255.0));
    }
    out << '\n';
  }
}

}  // namespace corrimg
