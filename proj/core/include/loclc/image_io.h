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

#ifndef LOCLC_IMAGE_IO_H_
#define LOCLC_IMAGE_IO_H_

// 8-bit PGM (P5, or ASCII P2) and PPM (P6, or ASCII P3) plus headerless
// raw samples.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "loclc/image.h"

namespace loclc {

Image DecodePnm(std::span<const uint8_t> bytes);
// Binary P5 for one channel, P6 for three.
std::vector<uint8_t> EncodePnm(const Image& image);

struct RawShape {
  int width = 0;
  int height = 0;
  int channels = 1;
};

Image DecodeRaw(std::span<const uint8_t> bytes, const RawShape& shape);

// PNM unless `raw` is given.
Image ReadImage(const std::filesystem::path& path,
                const std::optional<RawShape>& raw = std::nullopt);
void WritePnm(const std::filesystem::path& path, const Image& image);

}  // namespace loclc

#endif  // LOCLC_IMAGE_IO_H_
