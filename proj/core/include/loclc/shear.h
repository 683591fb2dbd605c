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

#ifndef LOCLC_SHEAR_H_
#define LOCLC_SHEAR_H_

// Shear layout: image row i is shifted right by i * offset, so pixel
// (i, j) lands in column j + i * offset of an H x L buffer with
// L = W + (H - 1) * offset. With offset = h + 1 every buffer column holds
// exactly one wavefront step of the local model.
//
// Storage is column-major (channels innermost) so a column, i.e. one
// wavefront, is a single contiguous slab. Optional zero margins above and
// to the left let the sheared kernel read its context without bounds
// checks.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "loclc/image.h"

namespace loclc {

class ShearedBuffer {
 public:
  ShearedBuffer() = default;
  ShearedBuffer(int height, int width, int channels, int offset,
                int margin_rows = 0, int margin_cols = 0);

  int height() const { return height_; }
  int width() const { return width_; }  // unsheared image width
  int channels() const { return channels_; }
  int offset() const { return offset_; }
  int length() const { return length_; }
  int margin_rows() const { return margin_rows_; }
  int margin_cols() const { return margin_cols_; }

  // row in [-margin_rows, height), col in [-margin_cols, length).
  uint8_t& at(int row, int col, int ch) { return data_[Index(row, col, ch)]; }
  uint8_t at(int row, int col, int ch) const {
    return data_[Index(row, col, ch)];
  }

  // Contiguous storage of column `col`, starting at row -margin_rows.
  const uint8_t* column(int col) const { return &data_[Index(-margin_rows_, col, 0)]; }
  size_t column_stride() const {
    return static_cast<size_t>(height_ + margin_rows_) * channels_;
  }

 private:
  size_t Index(int row, int col, int ch) const {
    return static_cast<size_t>(col + margin_cols_) * column_stride() +
           static_cast<size_t>(row + margin_rows_) * channels_ + ch;
  }

  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  int offset_ = 1;
  int length_ = 0;
  int margin_rows_ = 0;
  int margin_cols_ = 0;
  std::vector<uint8_t> data_;
};

ShearedBuffer ShearImage(const Image& image, int offset, int margin_rows = 0,
                         int margin_cols = 0);

Image UnshearImage(const ShearedBuffer& buffer);

// Inclusive row interval; empty when first > last.
struct RowRange {
  int first = 0;
  int last = -1;
  int size() const { return last >= first ? last - first + 1 : 0; }
  bool operator==(const RowRange&) const = default;
};

// Rows holding a real pixel in buffer column `col`: all i with
// 0 <= col - i * offset < width.
RowRange ColumnRows(int col, int height, int width, int offset);

inline int ShearedLength(int height, int width, int offset) {
  return width + (height - 1) * offset;
}

}  // namespace loclc

#endif  // LOCLC_SHEAR_H_
