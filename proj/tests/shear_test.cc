// Copyright 2026 The LocLC Authors
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

#include "loclc/shear.h"

#include <gtest/gtest.h>

#include <random>

#include "loclc/error.h"
#include "loclc/schedule.h"
#include "test_util.h"

namespace loclc {
namespace {

TEST(ShearImageTest, FiveByFiveOffsetTwo) {
  Image img(5, 5, 1);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) img.at(i, j, 0) = static_cast<uint8_t>(10 * (i + 1) + j + 1);
  const ShearedBuffer buf = ShearImage(img, 2);
  EXPECT_EQ(buf.length(), 13);
  EXPECT_EQ(buf.height(), 5);
  // 1-based x_21 lands in column 3 and x_51 in column 9.
  EXPECT_EQ(buf.at(1, 2, 0), 21);
  EXPECT_EQ(buf.at(4, 8, 0), 51);
  for (int i = 0; i < 5; ++i) {
    for (int c = 0; c < 13; ++c) {
      const int j = c - 2 * i;
      EXPECT_EQ(buf.at(i, c, 0), j >= 0 && j < 5 ? img.at(i, j, 0) : 0);
    }
  }
  EXPECT_EQ(UnshearImage(buf), img);
}

TEST(ShearImageTest, SingleRowIsIdentityPlacement) {
  std::mt19937_64 rng(1);
  const Image img = testing::RandomImage(rng, 1, 9, 3);
  const ShearedBuffer buf = ShearImage(img, 4);
  EXPECT_EQ(buf.length(), 9);
  for (int j = 0; j < 9; ++j)
    for (int c = 0; c < 3; ++c) EXPECT_EQ(buf.at(0, j, c), img.at(0, j, c));
}

TEST(ShearImageTest, PlacementFormula) {
  std::mt19937_64 rng(2);
  for (int o = 1; o <= 5; ++o) {
    const Image img = testing::RandomImage(rng, 3, 3, 3);
    const ShearedBuffer buf = ShearImage(img, o, 2, 3);
    EXPECT_EQ(buf.length(), 3 + 2 * o);
    for (int i = -2; i < 3; ++i) {
      for (int c = -3; c < buf.length(); ++c) {
        for (int ch = 0; ch < 3; ++ch) {
          const int j = c - i * o;
          const bool real = i >= 0 && j >= 0 && j < 3;
          ASSERT_EQ(buf.at(i, c, ch), real ? img.at(i, j, ch) : 0);
        }
      }
    }
  }
}

TEST(ShearImageTest, RoundTrip) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int H = 1 + static_cast<int>(rng() % 12), W = 1 + static_cast<int>(rng() % 12);
    const int C = trial % 2 ? 3 : 1, o = 1 + static_cast<int>(rng() % 5);
    const Image img = testing::RandomImage(rng, H, W, C);
    EXPECT_EQ(UnshearImage(ShearImage(img, o, 3, 8)), img);
  }
  const Image one(1, 1, 1, {42});
  EXPECT_EQ(UnshearImage(ShearImage(one, 2)), one);
}

TEST(ShearedBufferTest, ColumnMajorContiguousColumns) {
  ShearedBuffer buf(4, 3, 3, 2, 1, 2);
  EXPECT_EQ(buf.column_stride(), 15u);
  buf.at(2, 5, 1) = 9;
  EXPECT_EQ(buf.column(5)[(2 + 1) * 3 + 1], 9);
  EXPECT_EQ(&buf.at(0, 6, 0) - &buf.at(0, 5, 0), 15);
  EXPECT_THROW(ShearedBuffer(0, 3, 1, 1), Error);
  EXPECT_THROW(ShearedBuffer(3, 3, 1, 0), Error);
}

TEST(ColumnRowsTest, Examples) {
  // 1-based column 9 of a 5x5, o=2 buffer holds rows 3..5.
  EXPECT_EQ(ColumnRows(8, 5, 5, 2), (RowRange{2, 4}));
  EXPECT_EQ(ColumnRows(0, 5, 5, 2), (RowRange{0, 0}));
  EXPECT_EQ(ColumnRows(12, 5, 5, 2), (RowRange{4, 4}));
  EXPECT_EQ(ColumnRows(8, 5, 5, 2).size(), 3);
  // Narrow image: some columns hold no pixel.
  EXPECT_EQ(ColumnRows(1, 3, 1, 3).size(), 0);
}

TEST(ColumnRowsTest, ColumnsAreWavefrontSteps) {
  for (int H = 1; H <= 12; ++H) {
    for (int W = 1; W <= 12; ++W) {
      for (int h = 1; h <= 4; ++h) {
        const int o = h + 1;
        const WavefrontSchedule s = BuildSchedule(H, W, h);
        ASSERT_EQ(ShearedLength(H, W, o), s.num_steps());
        for (int c = 0; c < s.num_steps(); ++c) {
          const RowRange rows = ColumnRows(c, H, W, o);
          std::vector<Position> got;
          for (int i = rows.first; i <= rows.last; ++i) got.push_back({i, c - i * o});
          ASSERT_EQ(got, s.steps[static_cast<size_t>(c)]) << H << "x" << W << " h=" << h;
        }
      }
    }
  }
}

}  // namespace
}  // namespace loclc
