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

#include "loclc/image.h"

#include <string>
#include <utility>

#include "loclc/error.h"

namespace loclc {

namespace {

void CheckExtents(int height, int width, int channels) {
  if (height < 1 || width < 1) {
    throw Error(ErrorCode::kShape, "image extents must be >= 1, got " +
                                       std::to_string(height) + "x" +
                                       std::to_string(width));
  }
  if (channels != 1 && channels != 3) {
    throw Error(ErrorCode::kShape,
                "image must have 1 or 3 channels, got " + std::to_string(channels));
  }
}

}  // namespace

Image::Image(int height, int width, int channels)
    : height_(height), width_(width), channels_(channels) {
  CheckExtents(height, width, channels);
  pixels_.assign(static_cast<size_t>(height) * width * channels, 0);
}

Image::Image(int height, int width, int channels, std::vector<uint8_t> pixels)
    : height_(height), width_(width), channels_(channels),
      pixels_(std::move(pixels)) {
  CheckExtents(height, width, channels);
  if (pixels_.size() != static_cast<size_t>(height) * width * channels) {
    throw Error(ErrorCode::kShape, "pixel buffer length does not match extents");
  }
}

}  // namespace loclc
