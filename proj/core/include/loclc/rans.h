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

#ifndef LOCLC_RANS_H_
#define LOCLC_RANS_H_

// Single-state rANS with 16-bit probabilities and byte-wise
// renormalization. The state lives in [2^23, 2^31) between operations.
//
// rANS is LIFO: the encoder consumes symbols in reverse decode order. The
// stream is the final encoder state (4 bytes, little-endian) followed by
// the renormalization bytes in the order the decoder reads them.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "loclc/distribution.h"

namespace loclc {

inline constexpr uint32_t kRansLowerBound = 1u << 23;

std::array<uint8_t, 4> FlushState(uint32_t state);
// Reads the 4-byte little-endian state; throws kCorruptStream if short.
uint32_t ReadState(std::span<const uint8_t> bytes);

class RansEncoder {
 public:
  RansEncoder() = default;

  // Encodes the interval [start, start + freq) of a 2^16 total.
  void Put(uint32_t start, uint32_t freq);
  void EncodeSymbol(int symbol, const QuantizedCdf& cdf) {
    Put(cdf.start(symbol), cdf.freq(symbol));
  }

  uint32_t state() const { return state_; }

  // Flushes the state and returns the complete stream.
  std::vector<uint8_t> Finish() const;

 private:
  uint32_t state_ = kRansLowerBound;
  std::vector<uint8_t> emitted_;  // in emission order
};

class RansDecoder {
 public:
  explicit RansDecoder(std::span<const uint8_t> stream);

  int DecodeSymbol(const QuantizedCdf& cdf);

  // Current slot, state mod 2^16.
  uint32_t Peek() const { return state_ & (kTotalFreq - 1); }
  // Consumes the symbol occupying [start, start + freq).
  void Advance(uint32_t start, uint32_t freq);

  uint32_t state() const { return state_; }
  size_t remaining() const { return stream_.size() - pos_; }

  // Throws kCorruptStream unless every byte was consumed and the state is
  // back at its initial value.
  void Finish() const;

 private:
  std::span<const uint8_t> stream_;
  size_t pos_ = 0;
  uint32_t state_ = 0;
};

}  // namespace loclc

#endif  // LOCLC_RANS_H_
