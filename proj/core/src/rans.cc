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

#include <algorithm>

#include "loclc/error.h"

namespace loclc {

std::array<uint8_t, 4> FlushState(uint32_t state) {
  return {static_cast<uint8_t>(state), static_cast<uint8_t>(state >> 8),
          static_cast<uint8_t>(state >> 16), static_cast<uint8_t>(state >> 24)};
}

uint32_t ReadState(std::span<const uint8_t> bytes) {
  if (bytes.size() < 4) {
    throw Error(ErrorCode::kCorruptStream, "rANS stream shorter than its state");
  }
  return static_cast<uint32_t>(bytes[0]) | static_cast<uint32_t>(bytes[1]) << 8 |
         static_cast<uint32_t>(bytes[2]) << 16 |
         static_cast<uint32_t>(bytes[3]) << 24;
}

void RansEncoder::Put(uint32_t start, uint32_t freq) {
  // Keep the post-update state below 2^31.
  const uint32_t x_max = ((kRansLowerBound >> kPrecisionBits) << 8) * freq;
  uint32_t x = state_;
  while (x >= x_max) {
    emitted_.push_back(static_cast<uint8_t>(x & 0xff));
    x >>= 8;
  }
  state_ = ((x / freq) << kPrecisionBits) + (x % freq) + start;
}

std::vector<uint8_t> RansEncoder::Finish() const {
  std::vector<uint8_t> out(emitted_.size() + 4);
  const auto head = FlushState(state_);
  std::copy(head.begin(), head.end(), out.begin());
  std::reverse_copy(emitted_.begin(), emitted_.end(), out.begin() + 4);
  return out;
}

RansDecoder::RansDecoder(std::span<const uint8_t> stream)
    : stream_(stream), pos_(4), state_(ReadState(stream)) {
  if (state_ < kRansLowerBound) {
    throw Error(ErrorCode::kCorruptStream, "rANS state below lower bound");
  }
}

void RansDecoder::Advance(uint32_t start, uint32_t freq) {
  uint32_t x = freq * (state_ >> kPrecisionBits) + Peek() - start;
  while (x < kRansLowerBound) {
    if (pos_ >= stream_.size()) {
      throw Error(ErrorCode::kCorruptStream, "rANS stream exhausted");
    }
    x = (x << 8) | stream_[pos_++];
  }
  state_ = x;
}

int RansDecoder::DecodeSymbol(const QuantizedCdf& cdf) {
  const int symbol = cdf.Lookup(Peek());
  Advance(cdf.start(symbol), cdf.freq(symbol));
  return symbol;
}

void RansDecoder::Finish() const {
  if (pos_ != stream_.size()) {
    throw Error(ErrorCode::kCorruptStream, "unconsumed bytes after last symbol");
  }
  if (state_ != kRansLowerBound) {
    throw Error(ErrorCode::kCorruptStream, "final rANS state mismatch");
  }
}

}  // namespace loclc
