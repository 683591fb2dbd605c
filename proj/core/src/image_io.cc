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

#include "loclc/image_io.h"

#include <cctype>
#include <string>

#include "loclc/byte_io.h"
#include "loclc/error.h"

namespace loclc {

namespace {

class PnmHeaderReader {
 public:
  explicit PnmHeaderReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  // Next whitespace-delimited unsigned integer, skipping '#' comments.
  int Int() {
    SkipSpaceAndComments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw Error(ErrorCode::kFormat, "malformed PNM header");
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > (1L << 30)) throw Error(ErrorCode::kFormat, "PNM value too large");
    }
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates the header from binary data.
  void EndHeader() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::kFormat, "PNM header not terminated");
    }
    ++pos_;
  }

  size_t position() const { return pos_; }
  void Skip(size_t n) { pos_ += n; }

 private:
  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
};

}  // namespace

Image DecodePnm(std::span<const uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw Error(ErrorCode::kFormat, "not a PNM file");
  }
  const char kind = static_cast<char>(bytes[1]);
  int channels = 0;
  bool ascii = false;
  switch (kind) {
    case '2': ascii = true; [[fallthrough]];
    case '5': channels = 1; break;
    case '3': ascii = true; [[fallthrough]];
    case '6': channels = 3; break;
    default:
      throw Error(ErrorCode::kFormat, std::string("unsupported PNM type P") + kind);
  }
  PnmHeaderReader header(bytes);
  header.Skip(2);
  const int width = header.Int();
  const int height = header.Int();
  const int maxval = header.Int();
  if (width < 1 || height < 1) throw Error(ErrorCode::kFormat, "PNM extents must be >= 1");
  if (maxval != 255) {
    throw Error(ErrorCode::kFormat,
                "only 8-bit PNM (maxval 255) is supported, got " + std::to_string(maxval));
  }

  Image image(height, width, channels);
  auto pixels = image.pixels();
  if (ascii) {
    for (uint8_t& v : pixels) {
      const int sample = header.Int();
      if (sample > 255) throw Error(ErrorCode::kFormat, "PNM sample exceeds maxval");
      v = static_cast<uint8_t>(sample);
    }
    return image;
  }
  header.EndHeader();
  const size_t offset = header.position();
  if (bytes.size() < offset + pixels.size()) {
    throw Error(ErrorCode::kTruncated, "PNM pixel data truncated");
  }
  std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(offset), pixels.size(),
              pixels.begin());
  return image;
}

std::vector<uint8_t> EncodePnm(const Image& image) {
  const std::string header = std::string(image.channels() == 1 ? "P5" : "P6") +
                             "\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels().begin(), image.pixels().end());
  return out;
}

Image DecodeRaw(std::span<const uint8_t> bytes, const RawShape& shape) {
  const size_t expected =
      static_cast<size_t>(shape.width) * shape.height * shape.channels;
  if (shape.width < 1 || shape.height < 1) {
    throw Error(ErrorCode::kInvalidArgument, "raw images need --width and --height");
  }
  if (bytes.size() != expected) {
    throw Error(ErrorCode::kFormat, "raw image has " + std::to_string(bytes.size()) +
                                        " bytes, expected " + std::to_string(expected));
  }
  return Image(shape.height, shape.width, shape.channels,
               std::vector<uint8_t>(bytes.begin(), bytes.end()));
}

Image ReadImage(const std::filesystem::path& path,
                const std::optional<RawShape>& raw) {
  const auto bytes = ReadFileBytes(path);
  return raw ? DecodeRaw(bytes, *raw) : DecodePnm(bytes);
}

void WritePnm(const std::filesystem::path& path, const Image& image) {
  WriteFileBytes(path, EncodePnm(image));
}

}  // namespace loclc
