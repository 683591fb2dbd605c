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

#ifndef LOCLC_CONTAINER_H_
#define LOCLC_CONTAINER_H_

// NLLC container, little-endian:
//
//   "NLLC" | version u8 (=1) | H u32 | W u32 | C u8 | h u8 |
//   model hash u64 | payload length u32 | payload (rANS stream)

#include <cstdint>
#include <span>
#include <vector>

namespace loclc {

inline constexpr uint8_t kContainerVersion = 1;
inline constexpr size_t kContainerHeaderSize = 27;

struct StreamHeader {
  uint32_t height = 0;
  uint32_t width = 0;
  uint8_t channels = 0;
  uint8_t horizon = 0;
  uint64_t model_hash = 0;
  uint32_t payload_length = 0;

  bool operator==(const StreamHeader&) const = default;
};

struct CompressedStream {
  StreamHeader header;
  std::vector<uint8_t> payload;

  uint64_t payload_bits() const { return 8 * static_cast<uint64_t>(payload.size()); }
  bool operator==(const CompressedStream&) const = default;
};

std::vector<uint8_t> SerializeStream(const CompressedStream& stream);
CompressedStream ParseStream(std::span<const uint8_t> bytes);
// Header only; the payload may be absent.
StreamHeader ParseHeader(std::span<const uint8_t> bytes);

}  // namespace loclc

#endif  // LOCLC_CONTAINER_H_
