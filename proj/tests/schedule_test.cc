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

#include "loclc/schedule.h"

#include <gtest/gtest.h>

#include <set>

#include "loclc/error.h"
#include "oracles.h"
#include "test_util.h"

namespace loclc {
namespace {

using P = Position;

// The tests below use 0-based coordinates; a 1-based pixel (i, j) is
// (i - 1, j - 1) here and a 1-based step t is index t - 1.

TEST(TimestepTest, FiveByFiveValues) {
  EXPECT_EQ(Timestep(0, 0, 1), 0);
  EXPECT_EQ(Timestep(0, 4, 1), 4);
  EXPECT_EQ(Timestep(4, 4, 1), 12);
  EXPECT_EQ(Timestep(2, 1, 2), 7);
  EXPECT_EQ(NumSteps(5, 5, 1), 13);
  EXPECT_EQ(MaxParallelism(5, 5, 1), 3);
  EXPECT_EQ(MaxParallelism(5, 13, 1), 5);
  EXPECT_EQ(MaxParallelism(9, 2, 3), 1);
}

TEST(BuildScheduleTest, FiveByFiveHorizonOne) {
  const WavefrontSchedule s = BuildSchedule(5, 5, 1);
  ASSERT_EQ(s.num_steps(), 13);
  EXPECT_EQ(s.steps[8], (std::vector<P>{{2, 4}, {3, 2}, {4, 0}}));
  EXPECT_EQ(s.MaxStepSize(), 3u);
}

TEST(BuildScheduleTest, SinglePixel) {
  const WavefrontSchedule s = BuildSchedule(1, 1, 3);
  ASSERT_EQ(s.num_steps(), 1);
  EXPECT_EQ(s.steps[0], (std::vector<P>{{0, 0}}));
}

TEST(BuildScheduleTest, ThreeByThree) {
  const WavefrontSchedule s = BuildSchedule(3, 3, 1);
  const std::vector<std::vector<P>> want = {
      {{0, 0}}, {{0, 1}}, {{0, 2}, {1, 0}}, {{1, 1}},
      {{1, 2}, {2, 0}}, {{2, 1}}, {{2, 2}}};
  EXPECT_EQ(s.steps, want);
}

TEST(BuildScheduleTest, NarrowImagesKeepEmptySteps) {
  const WavefrontSchedule s = BuildSchedule(3, 1, 2);
  ASSERT_EQ(s.num_steps(), NumSteps(3, 1, 2));
  EXPECT_EQ(s.steps[1].size(), 0u);
  EXPECT_EQ(s.steps[3], (std::vector<P>{{1, 0}}));
}

TEST(BuildScheduleTest, RejectsBadExtents) {
  EXPECT_THROW(BuildSchedule(0, 3, 1), Error);
  EXPECT_THROW(BuildSchedule(3, 0, 1), Error);
  EXPECT_THROW(BuildSchedule(3, 3, 0), Error);
}

TEST(BuildScheduleTest, InvariantsAndParallelSafety) {
  for (int H = 1; H <= 12; ++H) {
    for (int W = 1; W <= 12; ++W) {
      for (int h = 1; h <= 4; ++h) {
        const WavefrontSchedule s = BuildSchedule(H, W, h);
        ASSERT_EQ(s.num_steps(), W + (H - 1) * (h + 1));
        std::set<std::pair<int, int>> seen;
        size_t max_size = 0;
        for (int t = 0; t < s.num_steps(); ++t) {
          const auto& step = s.steps[static_cast<size_t>(t)];
          max_size = std::max(max_size, step.size());
          for (size_t a = 0; a < step.size(); ++a) {
            ASSERT_EQ(Timestep(step[a].row, step[a].col, h), t);
            ASSERT_TRUE(seen.insert({step[a].row, step[a].col}).second);
            if (a > 0) ASSERT_LT(step[a - 1].row, step[a].row);
            for (size_t b = 0; b < step.size(); ++b) {
              if (a == b) continue;
              ASSERT_FALSE(oracle::InContext(h, step[a].row, step[a].col,
                                             step[b].row, step[b].col));
            }
          }
        }
        ASSERT_EQ(seen.size(), static_cast<size_t>(H * W));
        ASSERT_EQ(max_size, static_cast<size_t>(MaxParallelism(H, W, h)))
            << H << "x" << W << " h=" << h;
        if (H == W) ASSERT_EQ(max_size, static_cast<size_t>((H + h) / (h + 1)));
      }
    }
  }
}

// Wavefront steps coincide with breadth-layered topological levels of the
// explicit dependency graph whenever the image is at least h+1 wide. For
// narrower images the graph has fewer levels than the formula's step count;
// see TopologicalLevelsCompressForNarrowImages.
TEST(BuildScheduleTest, MatchesTopologicalLevels) {
  for (int H = 1; H <= 8; ++H) {
    for (int h = 1; h <= 4; ++h) {
      for (int W = h + 1; W <= 8; ++W) {
        const auto levels = oracle::TopologicalLevels(H, W, h);
        const WavefrontSchedule s = BuildSchedule(H, W, h);
        for (int t = 0; t < s.num_steps(); ++t) {
          for (const P& p : s.steps[static_cast<size_t>(t)]) {
            ASSERT_EQ(levels[p.row][p.col], t) << H << "x" << W << " h=" << h;
          }
        }
      }
    }
  }
}

TEST(BuildScheduleTest, TopologicalLevelsCompressForNarrowImages) {
  // A 3x1 column with h=2: every pixel depends only on the one above it, so
  // the graph has 3 levels while the wavefront formula spans 7 steps.
  const auto levels = oracle::TopologicalLevels(3, 1, 2);
  EXPECT_EQ(levels[2][0], 2);
  EXPECT_EQ(NumSteps(3, 1, 2), 7);
}

TEST(BuildScheduleTest, NonEmptyStepsMatchLevelsForNarrowImages) {
  for (int H = 1; H <= 8; ++H) {
    for (int h = 1; h <= 4; ++h) {
      for (int W = 1; W <= h; ++W) {
        const auto levels = oracle::TopologicalLevels(H, W, h);
        int depth = 0;
        for (const WavefrontSchedule s = BuildSchedule(H, W, h); const auto& step : s.steps) {
          if (step.empty()) continue;
          for (const P& p : step) ASSERT_EQ(levels[p.row][p.col], depth);
          ++depth;
        }
        EXPECT_EQ(depth, H * W);
      }
    }
  }
}

TEST(CachedScheduleTest, SharedInstance) {
  const auto a = CachedSchedule(6, 7, 2);
  const auto b = CachedSchedule(6, 7, 2);
  EXPECT_EQ(a.get(), b.get());
  EXPECT_EQ(a->steps, BuildSchedule(6, 7, 2).steps);
  EXPECT_NE(CachedSchedule(7, 6, 2).get(), a.get());
}

TEST(GatherPatchTest, TopLeftHasZeroContext) {
  std::mt19937_64 rng(1);
  const Image img = testing::RandomImage(rng, 4, 4, 3);
  const Tensor p = GatherPatch(img, 0, 0, 2);
  ASSERT_EQ(p.dims(), (std::vector<int>{3, 5, 3}));
  for (int r = 0; r < 3; ++r) {
    for (int k = 0; k < 5; ++k) {
      if (r == 2 && k >= 2) continue;  // target and masked cells
      for (int c = 0; c < 3; ++c) EXPECT_EQ(p.at(r, k, c), 0.0f);
    }
  }
}

TEST(GatherPatchTest, ConstantInterior) {
  const Image img = testing::ConstantImage(9, 9, 1, 7);
  const Tensor p = GatherPatch(img, 4, 4, 3);
  for (int r = 0; r <= 3; ++r)
    for (int k = 0; k <= 6; ++k) EXPECT_EQ(p.at(r, k, 0), 7.0f);
}

TEST(GatherPatchTest, RampMatchesIndexArithmetic) {
  Image img(5, 5, 1);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) img.at(i, j, 0) = static_cast<uint8_t>(10 * i + j);
  for (int h = 1; h <= 3; ++h) {
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const Tensor p = GatherPatch(img, i, j, h);
        for (int r = 0; r <= h; ++r) {
          for (int k = 0; k <= 2 * h; ++k) {
            const int si = i - h + r, sj = j - h + k;
            if (r == h && k >= h) continue;
            const float want = img.Contains(si, sj) ? 10.0f * si + sj : 0.0f;
            ASSERT_EQ(p.at(r, k, 0), want);
          }
        }
      }
    }
  }
  // 1-based (3,3), h=1: rows 2..3, cols 2..4.
  const Tensor p = GatherPatch(img, 2, 2, 1);
  EXPECT_EQ(p.at(0, 0, 0), 11.0f);
  EXPECT_EQ(p.at(0, 2, 0), 13.0f);
  EXPECT_EQ(p.at(1, 0, 0), 21.0f);
}

TEST(GatherPatchTest, OutsideImageRejected) {
  const Image img(2, 2, 1);
  EXPECT_THROW(GatherPatch(img, 2, 0, 1), Error);
}

TEST(CanonicalOrderTest, Examples) {
  EXPECT_EQ(CanonicalOrder(2, 2, 1, 1),
            (std::vector<SymbolRef>{{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}}));
  const auto col = CanonicalOrder(6, 1, 1, 2);
  for (size_t i = 0; i < col.size(); ++i) EXPECT_EQ(col[i].row, static_cast<int>(i));

  const auto order = CanonicalOrder(5, 5, 1, 1);
  const auto pos = [&](int r, int c) {
    return std::find(order.begin(), order.end(), SymbolRef{r, c, 0}) - order.begin();
  };
  EXPECT_LT(pos(1, 0), pos(0, 4));
}

TEST(CanonicalOrderTest, ChannelsWithinStep) {
  // Step 2 of a 3x3 h=1 image holds (0,2) and (1,0).
  const auto order = CanonicalOrder(3, 3, 3, 1);
  const std::vector<SymbolRef> step2(order.begin() + 6, order.begin() + 12);
  EXPECT_EQ(step2, (std::vector<SymbolRef>{{0, 2, 0}, {1, 0, 0}, {0, 2, 1},
                                           {1, 0, 1}, {0, 2, 2}, {1, 0, 2}}));
}

TEST(CanonicalOrderTest, IsTopologicalAndRasterWithinRows) {
  for (int H = 1; H <= 7; ++H) {
    for (int W = 1; W <= 7; ++W) {
      for (int h = 1; h <= 3; ++h) {
        for (int C : {1, 3}) {
          const auto order = CanonicalOrder(H, W, C, h);
          ASSERT_EQ(order.size(), static_cast<size_t>(H * W * C));
          std::vector<int> rank(static_cast<size_t>(H * W * C), -1);
          for (size_t n = 0; n < order.size(); ++n) {
            const SymbolRef& s = order[n];
            rank[static_cast<size_t>((s.row * W + s.col) * C + s.channel)] =
                static_cast<int>(n);
          }
          for (int v : rank) ASSERT_GE(v, 0);
          const auto at = [&](int r, int c, int ch) {
            return rank[static_cast<size_t>((r * W + c) * C + ch)];
          };
          for (int r = 0; r < H; ++r) {
            for (int c = 0; c < W; ++c) {
              for (int ch = 0; ch < C; ++ch) {
                if (ch > 0) ASSERT_LT(at(r, c, ch - 1), at(r, c, ch));
                if (c > 0) ASSERT_LT(at(r, c - 1, ch), at(r, c, ch));
                for (int r2 = 0; r2 < H; ++r2)
                  for (int c2 = 0; c2 < W; ++c2)
                    if (oracle::InContext(h, r, c, r2, c2))
                      for (int ch2 = 0; ch2 < C; ++ch2)
                        ASSERT_LT(at(r2, c2, ch2), at(r, c, 0));
              }
            }
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace loclc
