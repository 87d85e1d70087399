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

#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

namespace corrimg {
namespace {

Image parse(const std::string& text) {
  std::istringstream in(text);
  return read_pgm(in);
}

TEST(ReadPgm, Plain) {
  const Image img = parse("P2\n3 2\n4\n0 1 2\n3 4 0\n");
  EXPECT_EQ(img.width, 3);
  EXPECT_EQ(img.height, 2);
  EXPECT_EQ(img.values, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0, 0.0}));
  EXPECT_EQ(img.at(1, 1), 1.0);
}

TEST(ReadPgm, Comments) {
  const Image img = parse("P2 # magic\n# size next\n2 1\n255 # max\n255 0\n");
  EXPECT_EQ(img.values, (std::vector<double>{1.0, 0.0}));
}

TEST(ReadPgm, Errors) {
  EXPECT_THROW(parse("P5\n1 1\n255\n0\n"), PgmError);
  EXPECT_THROW(parse("P2\n0 1\n255\n"), PgmError);
  EXPECT_THROW(parse("P2\n2 1\n255\n0\n"), PgmError);
  EXPECT_THROW(parse("P2\n1 1\n255\n300\n"), PgmError);
  EXPECT_THROW(parse("P2\n1 1\n0\n0\n"), PgmError);
  EXPECT_THROW(parse("P2\nx 1\n255\n0\n"), PgmError);
  EXPECT_THROW(read_pgm_file("/nonexistent/mask.pgm"), PgmError);
}

TEST(WritePgm, ClampsAndRoundTrips) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const Image img{4, 1, {0.0, 1.0, 2.0, nan}};
  std::ostringstream out;
  write_pgm(img, out);
  EXPECT_EQ(out.str(), "P2\n4 1\n255\n0 255 255 0\n");
  const Image back = parse(out.str());
  EXPECT_EQ(back.values, (std::vector<double>{0.0, 1.0, 1.0, 0.0}));
}

}  // namespace
}  // namespace corrimg
