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

#include "loclc/container.h"

#include <string>

#include "loclc/byte_io.h"
#include "loclc/error.h"

namespace loclc {

namespace {

constexpr char kMagic[4] = {'N', 'L', 'L', 'C'};

StreamHeader ReadHeader(ByteReader& in) {
  if (in.Str(4) != std::string_view(kMagic, 4)) {
    throw Error(ErrorCode::kFormat, "not an NLLC stream (bad magic)");
  }
  const uint8_t version = in.U8();
  if (version != kContainerVersion) {
    throw Error(ErrorCode::kFormat,
                "unsupported container version " + std::to_string(version));
  }
  StreamHeader h;
  h.height = in.U32();
  h.width = in.U32();
  h.channels = in.U8();
  h.horizon = in.U8();
  h.model_hash = in.U64();
  h.payload_length = in.U32();
  if (h.height < 1 || h.width < 1 || (h.channels != 1 && h.channels != 3) ||
      h.horizon < 1) {
    throw Error(ErrorCode::kFormat, "invalid stream header fields");
  }
  return h;
}

}  // namespace

std::vector<uint8_t> SerializeStream(const CompressedStream& stream) {
  const StreamHeader& h = stream.header;
  if (h.payload_length != stream.payload.size()) {
    throw Error(ErrorCode::kInvalidArgument, "payload length field is stale");
  }
  ByteWriter out;
  out.Str(std::string_view(kMagic, 4));
  out.U8(kContainerVersion);
  out.U32(h.height);
  out.U32(h.width);
  out.U8(h.channels);
  out.U8(h.horizon);
  out.U64(h.model_hash);
  out.U32(h.payload_length);
  out.Bytes(stream.payload);
  return out.Take();
}

StreamHeader ParseHeader(std::span<const uint8_t> bytes) {
  ByteReader in(bytes);
  return ReadHeader(in);
}

CompressedStream ParseStream(std::span<const uint8_t> bytes) {
  ByteReader in(bytes);
  CompressedStream stream;
  stream.header = ReadHeader(in);
  const auto payload = in.Bytes(stream.header.payload_length);
  stream.payload.assign(payload.begin(), payload.end());
  if (in.remaining() != 0) {
    throw Error(ErrorCode::kFormat, "trailing bytes after payload");
  }
  return stream;
}

}  // namespace loclc
