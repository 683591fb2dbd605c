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

#ifndef LOCLC_DISTRIBUTION_H_
#define LOCLC_DISTRIBUTION_H_

// Discretized mixture of logistics over {0..255}, its 16-bit quantized CDF
// and likelihood accounting.
//
// For RGB the mixture is joint across channels (PixelCNN++ style): G's
// mean is shifted by tanh(a) * R and B's by tanh(b) * R + tanh(c) * G, with
// R, G normalized to [-1, 1]. The per-channel conditional used for coding
// reweights the mixture by each component's likelihood of the channels
// already known, so the product of conditionals is the joint pmf.

#include <array>
#include <cstdint>
#include <span>

#include "loclc/image.h"
#include "loclc/model.h"

namespace loclc {

inline constexpr int kNumSymbols = 256;
inline constexpr int kPrecisionBits = 16;
inline constexpr uint32_t kTotalFreq = 1u << kPrecisionBits;
inline constexpr float kMinLogScale = -7.0f;

using Pmf = std::array<double, kNumSymbols>;

struct QuantizedCdf {
  // cdf[0] = 0, cdf[256] = 65536, every symbol width >= 1.
  std::array<uint32_t, kNumSymbols + 1> cdf{};

  uint32_t start(int symbol) const { return cdf[static_cast<size_t>(symbol)]; }
  uint32_t freq(int symbol) const {
    return cdf[static_cast<size_t>(symbol) + 1] - cdf[static_cast<size_t>(symbol)];
  }
  // Symbol whose interval contains `slot` (< 65536).
  int Lookup(uint32_t slot) const;

  bool operator==(const QuantizedCdf&) const = default;
};

// Conditional pmf of `channel` given the earlier channels of the same
// pixel (`prior` must hold at least `channel` values). Bins 0 and 255
// absorb the open tails. Throws kInvalidArgument on non-finite params.
Pmf ComputePmf(const OutputParams& params, int channel,
               std::span<const uint8_t> prior = {});

// Every symbol gets 1, then the remaining 65280 units are split by
// floor(p * 65280); leftovers go one unit at a time by descending
// fractional residual, lower symbol first on ties.
QuantizedCdf Quantize(const Pmf& pmf);

// Quantize(ComputePmf(...)).
QuantizedCdf ComputeCdf(const OutputParams& params, int channel,
                        std::span<const uint8_t> prior = {});

// -sum log2 p(x) over all pixels and channels (exact, unquantized pmf).
// `params` is row-major, one entry per pixel.
double Log2Likelihood(const Image& image, std::span<const OutputParams> params);

inline double BitsPerDim(double bits, const Image& image) {
  return bits / static_cast<double>(image.size());
}

}  // namespace loclc

#endif  // LOCLC_DISTRIBUTION_H_
