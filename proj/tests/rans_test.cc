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

#include "loclc/rans.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "loclc/error.h"
#include "oracles.h"

namespace loclc {
namespace {

QuantizedCdf RandomCdf(std::mt19937_64& rng) {
  Pmf p;
  std::gamma_distribution<double> g(rng() % 2 ? 0.1 : 2.0, 1.0);
  double sum = 0;
  for (double& v : p) sum += v = g(rng);
  for (double& v : p) v /= sum;
  return Quantize(p);
}

QuantizedCdf UniformCdf() {
  Pmf p;
  p.fill(1.0 / 256);
  return Quantize(p);
}

std::vector<uint8_t> EncodeAll(const std::vector<int>& symbols,
                               const std::vector<QuantizedCdf>& cdfs) {
  RansEncoder enc;
  for (size_t i = symbols.size(); i-- > 0;) enc.EncodeSymbol(symbols[i], cdfs[i]);
  return enc.Finish();
}

TEST(FlushTest, LittleEndianLayout) {
  const auto b = FlushState(0x00012345);
  EXPECT_EQ(b, (std::array<uint8_t, 4>{0x45, 0x23, 0x01, 0x00}));
  EXPECT_EQ(ReadState(b), 0x00012345u);
  for (uint32_t s : {kRansLowerBound, 0x7fffffffu, 0x00abcdefu}) {
    EXPECT_EQ(ReadState(FlushState(s)), s);
  }
}

TEST(RansTest, EmptyMessageIsFourBytes) {
  const std::vector<uint8_t> b = RansEncoder().Finish();
  ASSERT_EQ(b.size(), 4u);
  RansDecoder dec(b);
  EXPECT_NO_THROW(dec.Finish());
}

TEST(RansTest, SingleSymbolRoundTrip) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const QuantizedCdf cdf = RandomCdf(rng);
    const int sym = static_cast<int>(rng() % 256);
    RansEncoder enc;
    enc.EncodeSymbol(sym, cdf);
    const auto bytes = enc.Finish();
    RansDecoder dec(bytes);
    EXPECT_EQ(dec.DecodeSymbol(cdf), sym);
    EXPECT_NO_THROW(dec.Finish());
  }
}

TEST(RansTest, KnownSequence) {
  const std::vector<int> msg = {3, 1, 4, 1, 5};
  const std::vector<QuantizedCdf> cdfs(msg.size(), UniformCdf());
  const auto bytes = EncodeAll(msg, cdfs);
  RansDecoder dec(bytes);
  std::vector<int> out;
  for (const auto& c : cdfs) out.push_back(dec.DecodeSymbol(c));
  EXPECT_EQ(out, msg);
  dec.Finish();
}

TEST(RansTest, FairCoinOverhead) {
  std::mt19937_64 rng(2);
  RansEncoder enc;
  for (int i = 0; i < 10000; ++i) {
    const uint32_t bit = rng() & 1;
    enc.Put(bit * 32768, 32768);
  }
  EXPECT_LE(enc.Finish().size(), 10000u / 8 + 8);
}

TEST(RansTest, StateStaysInInterval) {
  std::mt19937_64 rng(3);
  RansEncoder enc;
  std::vector<int> syms;
  std::vector<QuantizedCdf> cdfs;
  for (int i = 0; i < 5000; ++i) {
    cdfs.push_back(RandomCdf(rng));
    syms.push_back(cdfs.back().Lookup(static_cast<uint32_t>(rng() % 65536)));
    enc.EncodeSymbol(syms.back(), cdfs.back());
    ASSERT_GE(enc.state(), kRansLowerBound);
    ASSERT_LT(enc.state(), 1u << 31);
  }
  const auto bytes = enc.Finish();
  RansDecoder dec(bytes);
  for (size_t i = syms.size(); i-- > 0;) {
    ASSERT_EQ(dec.DecodeSymbol(cdfs[i]), syms[i]);
    ASSERT_GE(dec.state(), kRansLowerBound);
  }
  dec.Finish();
}

// Byte streams match the textbook 64-bit reference coder.
TEST(RansTest, MatchesReferenceCoder) {
  std::mt19937_64 rng(4);
  for (int seq = 0; seq < 300; ++seq) {
    const int n = static_cast<int>(rng() % 400);
    RansEncoder enc;
    oracle::ReferenceRans ref;
    for (int i = 0; i < n; ++i) {
      const QuantizedCdf cdf = RandomCdf(rng);
      const int sym = static_cast<int>(rng() % 256);
      enc.EncodeSymbol(sym, cdf);
      ref.Encode(cdf.start(sym), cdf.freq(sym));
      ASSERT_EQ(enc.state(), ref.state());
    }
    ASSERT_EQ(enc.Finish(), ref.Bytes()) << "sequence " << seq;
  }
}

// The decoded slot is the state's low 16 bits mapped through the cdf.
TEST(RansTest, SlotLookupOracle) {
  std::mt19937_64 rng(5);
  std::vector<QuantizedCdf> cdfs;
  std::vector<int> syms;
  for (int i = 0; i < 1000; ++i) {
    cdfs.push_back(RandomCdf(rng));
    syms.push_back(static_cast<int>(rng() % 256));
  }
  const auto bytes = EncodeAll(syms, cdfs);
  RansDecoder dec(bytes);
  for (size_t i = 0; i < syms.size(); ++i) {
    const uint32_t slot = dec.state() % 65536;
    int want = 0;
    while (cdfs[i].cdf[static_cast<size_t>(want) + 1] <= slot) ++want;
    ASSERT_EQ(want, syms[i]);
    ASSERT_EQ(dec.DecodeSymbol(cdfs[i]), syms[i]);
  }
}

TEST(RansTest, NearOptimalLength) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<QuantizedCdf> cdfs;
    std::vector<int> syms;
    double info = 0;
    const int n = 100 + static_cast<int>(rng() % 3000);
    for (int i = 0; i < n; ++i) {
      cdfs.push_back(RandomCdf(rng));
      syms.push_back(cdfs.back().Lookup(static_cast<uint32_t>(rng() % 65536)));
      info -= std::log2(cdfs.back().freq(syms.back()) / 65536.0);
    }
    const auto bytes = EncodeAll(syms, cdfs);
    EXPECT_LE(8.0 * bytes.size(), info + 40.0) << trial;
  }
}

TEST(RansTest, TruncatedStreamIsCorrupt) {
  std::mt19937_64 rng(7);
  std::vector<QuantizedCdf> cdfs;
  std::vector<int> syms;
  for (int i = 0; i < 300; ++i) {
    cdfs.push_back(RandomCdf(rng));
    syms.push_back(static_cast<int>(rng() % 256));
  }
  auto bytes = EncodeAll(syms, cdfs);
  bytes.pop_back();
  try {
    RansDecoder dec(bytes);
    for (const auto& c : cdfs) dec.DecodeSymbol(c);
    dec.Finish();
    FAIL() << "truncation not detected";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptStream);
  }
  EXPECT_THROW(RansDecoder(std::vector<uint8_t>{1, 2, 3}), Error);
}

TEST(RansTest, LeftoverBytesDetected) {
  auto bytes = EncodeAll({7}, {UniformCdf()});
  bytes.push_back(0);
  RansDecoder dec(bytes);
  dec.DecodeSymbol(UniformCdf());
  EXPECT_THROW(dec.Finish(), Error);
}

}  // namespace
}  // namespace loclc
