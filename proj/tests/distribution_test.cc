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

#include "loclc/distribution.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "loclc/error.h"
#include "oracles.h"
#include "test_util.h"

namespace loclc {
namespace {

// One-mixture grayscale params with mean/scale given in normalized units.
OutputParams Single(float mean, float log_scale) {
  return OutputParams{1, 1, {0.0f, mean, log_scale}};
}

OutputParams RandomParams(std::mt19937_64& rng, int channels, int mixtures,
                          float min_log_scale = -8.0f) {
  OutputParams p{channels, mixtures, {}};
  p.values.resize(static_cast<size_t>(channels == 3 ? 10 * mixtures : 3 * mixtures));
  std::normal_distribution<float> d(0.0f, 1.0f);
  for (float& v : p.values) v = d(rng);
  for (int k = 0; k < mixtures; ++k) {
    for (int c = 0; c < channels; ++c) {
      const size_t idx = static_cast<size_t>(mixtures * (1 + channels) + k * channels + c);
      p.values[idx] = std::uniform_real_distribution<float>(min_log_scale, 1.0f)(rng);
    }
  }
  return p;
}

float PixelToNorm(double v) { return static_cast<float>(v / 127.5 - 1.0); }

TEST(PmfTest, DeltaLimit) {
  const Pmf p = ComputePmf(Single(PixelToNorm(128), -7.0f), 0);
  EXPECT_EQ(std::max_element(p.begin(), p.end()) - p.begin(), 128);
  // The smallest scale is exp(-7) in normalized units, about 0.12 pixels.
  EXPECT_GT(p[128], 0.97);
}

TEST(PmfTest, FlatLimitInteriorBins) {
  const Pmf p = ComputePmf(Single(0.0f, 8.0f), 0);
  // Edge bins absorb the open tails; interior bins are near uniform.
  const auto [lo, hi] = std::minmax_element(p.begin() + 1, p.end() - 1);
  EXPECT_LT(*hi / *lo, 1.1);
  EXPECT_GT(p[0], p[1]);
  EXPECT_GT(p[255], p[254]);
}

TEST(PmfTest, MatchesLogisticOracle) {
  struct Case { double mu, s; };
  for (Case c : {Case{100.25, 3.0}, Case{0.0, 10.0}, Case{255.0, 0.7},
                 Case{17.5, 40.0}}) {
    const float ls = static_cast<float>(std::log(c.s / 127.5));
    const Pmf p = ComputePmf(Single(PixelToNorm(c.mu), ls), 0);
    // Re-derive mean/scale from the float values actually stored.
    const double mu = (PixelToNorm(c.mu) + 1.0) * 127.5;
    const double s = std::exp(static_cast<double>(ls)) * 127.5;
    for (int x = 0; x < 256; ++x) {
      EXPECT_NEAR(p[x], static_cast<double>(oracle::LogisticBin(mu, s, x)), 1e-9)
          << "x=" << x;
    }
  }
}

TEST(PmfTest, MixtureCouplingMatchesJointOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int channels = trial % 2 == 0 ? 3 : 1;
    // Scales stay wide enough that no component underflows to zero mass.
    const OutputParams params = RandomParams(rng, channels, 1 + trial % 5, -4.0f);
    std::vector<int> prior = {static_cast<int>(rng() % 256), static_cast<int>(rng() % 256)};
    const uint8_t prior_bytes[2] = {static_cast<uint8_t>(prior[0]),
                                    static_cast<uint8_t>(prior[1])};
    for (int c = 0; c < channels; ++c) {
      const Pmf got = ComputePmf(params, c, std::span(prior_bytes, 2));
      const auto want = oracle::MixturePmf(params, c, prior);
      long double total = 0;
      for (long double v : want) total += v;
      for (int x = 0; x < 256; ++x) {
        ASSERT_NEAR(got[x], static_cast<double>(want[x] / total), 1e-9)
            << "trial " << trial << " channel " << c << " x " << x;
      }
    }
  }
}

TEST(PmfTest, NormalizedNonNegative) {
  std::mt19937_64 rng(23);
  const uint8_t prior[2] = {12, 240};
  for (int trial = 0; trial < 2000; ++trial) {
    const int channels = trial % 2 == 0 ? 3 : 1;
    const OutputParams params = RandomParams(rng, channels, 1 + trial % 6);
    for (int c = 0; c < channels; ++c) {
      const Pmf p = ComputePmf(params, c, prior);
      double sum = 0;
      for (double v : p) {
        ASSERT_GE(v, 0.0);
        sum += v;
      }
      ASSERT_NEAR(sum, 1.0, 1e-6);
    }
  }
}

TEST(PmfTest, Errors) {
  OutputParams p = Single(0.0f, 0.0f);
  p.values[1] = std::nanf("");
  EXPECT_THROW(ComputePmf(p, 0), Error);
  p.values[1] = INFINITY;
  EXPECT_THROW(ComputePmf(p, 0), Error);
  EXPECT_THROW(ComputePmf(Single(0, 0), 1), Error);
  OutputParams rgb{3, 1, std::vector<float>(10, 0.0f)};
  EXPECT_THROW(ComputePmf(rgb, 2, std::vector<uint8_t>{1}), Error);
  EXPECT_THROW(ComputePmf(OutputParams{1, 2, {0, 0, 0}}, 0), Error);
}

TEST(QuantizeTest, Uniform) {
  Pmf u;
  u.fill(1.0 / 256);
  const QuantizedCdf q = Quantize(u);
  for (int s = 0; s < 256; ++s) EXPECT_EQ(q.freq(s), 256u);
}

TEST(QuantizeTest, PointMass) {
  Pmf p{};
  p[0] = 1.0;
  const QuantizedCdf q = Quantize(p);
  EXPECT_EQ(q.freq(0), 65536u - 255u);
  for (int s = 1; s < 256; ++s) EXPECT_EQ(q.freq(s), 1u);
}

TEST(QuantizeTest, MatchesReferenceQuantizer) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 500; ++trial) {
    Pmf p;
    // Mix of dirichlet-like draws and peaked pmfs.
    std::gamma_distribution<double> g(trial % 3 == 0 ? 0.05 : 1.0, 1.0);
    double sum = 0;
    for (double& v : p) sum += v = g(rng);
    for (double& v : p) v /= sum;
    const QuantizedCdf q = Quantize(p);
    const auto want = oracle::QuantizeFreqs(std::vector<double>(p.begin(), p.end()));
    for (int s = 0; s < 256; ++s) ASSERT_EQ(q.freq(s), want[s]) << trial << "/" << s;
  }
}

TEST(QuantizeTest, InvariantsOverRandomParams) {
  std::mt19937_64 rng(31);
  const uint8_t prior[2] = {200, 3};
  for (int trial = 0; trial < 10000; ++trial) {
    const int channels = trial % 2 == 0 ? 3 : 1;
    const OutputParams params = RandomParams(rng, channels, 1 + trial % 4);
    const int c = static_cast<int>(rng() % static_cast<uint64_t>(channels));
    const Pmf p = ComputePmf(params, c, prior);
    const QuantizedCdf q = Quantize(p);
    ASSERT_EQ(q.cdf[0], 0u);
    ASSERT_EQ(q.cdf[256], 65536u);
    for (int s = 0; s < 256; ++s) {
      ASSERT_GE(q.freq(s), 1u);
      ASSERT_LE(std::abs(q.freq(s) / 65536.0 - p[s]), 256.0 / 65536.0);
    }
    ASSERT_EQ(ComputeCdf(params, c, prior), q);
  }
}

TEST(QuantizeTest, LookupInvertsIntervals) {
  std::mt19937_64 rng(37);
  const QuantizedCdf q = Quantize(ComputePmf(RandomParams(rng, 1, 3), 0));
  for (uint32_t slot = 0; slot < 65536; ++slot) {
    const int s = q.Lookup(slot);
    ASSERT_LE(q.start(s), slot);
    ASSERT_LT(slot, q.start(s) + q.freq(s));
  }
}

TEST(Log2LikelihoodTest, UniformModelIsEightBpd) {
  std::mt19937_64 rng(41);
  const Image img = testing::RandomImage(rng, 5, 4, 1);
  const WeightSet u = UniformWeights(1);
  const auto params = ForwardImage(img, u);
  const double bits = Log2Likelihood(img, params);
  EXPECT_NEAR(BitsPerDim(bits, img), 8.0, 1e-4);
}

TEST(Log2LikelihoodTest, DeltaAtTruthIsNearZero) {
  const Image img(2, 2, 1, {10, 20, 30, 40});
  std::vector<OutputParams> params;
  for (uint8_t v : img.pixels()) params.push_back(Single(PixelToNorm(v), -7.0f));
  // Bounded by the minimum scale: each pixel costs about -log2(0.973).
  EXPECT_LT(BitsPerDim(Log2Likelihood(img, params), img), 0.05);
}

TEST(Log2LikelihoodTest, MatchesScalarSum) {
  const Image img(2, 2, 1, {0, 77, 128, 255});
  std::vector<OutputParams> params = {Single(0.1f, -2.0f), Single(-0.4f, -3.0f),
                                      Single(0.0f, -1.0f), Single(0.9f, -4.5f)};
  double want = 0;
  for (int i = 0; i < 4; ++i) {
    const double mu = (params[i].mean(0, 0) + 1.0) * 127.5;
    const double s = std::exp(static_cast<double>(params[i].log_scale(0, 0))) * 127.5;
    want -= std::log2(static_cast<double>(oracle::LogisticBin(mu, s, img.pixels()[i])));
  }
  EXPECT_NEAR(Log2Likelihood(img, params), want, 1e-6 * want);
}

}  // namespace
}  // namespace loclc
