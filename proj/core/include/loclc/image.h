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

#ifndef LOCLC_IMAGE_H_
#define LOCLC_IMAGE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace loclc {

// H x W x C grid of 8-bit samples, row-major with channels innermost.
// Coordinates are 0-based throughout the library.
class Image {
 public:
  Image() = default;
  Image(int height, int width, int channels);
  Image(int height, int width, int channels, std::vector<uint8_t> pixels);

  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }
  size_t size() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  uint8_t& at(int row, int col, int ch) {
    return pixels_[Index(row, col, ch)];
  }
  uint8_t at(int row, int col, int ch) const {
    return pixels_[Index(row, col, ch)];
  }
  bool Contains(int row, int col) const {
    return row >= 0 && row < height_ && col >= 0 && col < width_;
  }

  std::span<uint8_t> pixels() { return pixels_; }
  std::span<const uint8_t> pixels() const { return pixels_; }

  bool operator==(const Image& other) const = default;

 private:
  size_t Index(int row, int col, int ch) const {
    return (static_cast<size_t>(row) * width_ + col) * channels_ + ch;
  }

  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<uint8_t> pixels_;
};

}  // namespace loclc

#endif  // LOCLC_IMAGE_H_
