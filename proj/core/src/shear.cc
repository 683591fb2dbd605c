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

#include "loclc/shear.h"

#include <algorithm>

#include "loclc/error.h"

namespace loclc {

ShearedBuffer::ShearedBuffer(int height, int width, int channels, int offset,
                             int margin_rows, int margin_cols)
    : height_(height), width_(width), channels_(channels), offset_(offset),
      margin_rows_(margin_rows), margin_cols_(margin_cols) {
  if (height < 1 || width < 1 || channels < 1) {
    throw Error(ErrorCode::kShape, "sheared buffer extents must be >= 1");
  }
  if (offset < 1) {
    throw Error(ErrorCode::kInvalidArgument, "shear offset must be >= 1");
  }
  if (margin_rows < 0 || margin_cols < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative shear margin");
  }
  length_ = ShearedLength(height, width, offset);
  data_.assign(static_cast<size_t>(length_ + margin_cols_) * column_stride(), 0);
}

ShearedBuffer ShearImage(const Image& image, int offset, int margin_rows,
                         int margin_cols) {
  ShearedBuffer buffer(image.height(), image.width(), image.channels(), offset,
                       margin_rows, margin_cols);
  for (int i = 0; i < image.height(); ++i) {
    for (int j = 0; j < image.width(); ++j) {
      for (int ch = 0; ch < image.channels(); ++ch) {
        buffer.at(i, j + i * offset, ch) = image.at(i, j, ch);
      }
    }
  }
  return buffer;
}

Image UnshearImage(const ShearedBuffer& buffer) {
  Image image(buffer.height(), buffer.width(), buffer.channels());
  const int offset = buffer.offset();
  for (int i = 0; i < image.height(); ++i) {
    for (int j = 0; j < image.width(); ++j) {
      for (int ch = 0; ch < image.channels(); ++ch) {
        image.at(i, j, ch) = buffer.at(i, j + i * offset, ch);
      }
    }
  }
  return image;
}

RowRange ColumnRows(int col, int height, int width, int offset) {
  // col - i * offset in [0, width)  <=>  i in [ceil((col-width+1)/o), floor(col/o)]
  if (col < 0) return {};
  const int lo_num = col - width + 1;
  const int first = lo_num <= 0 ? 0 : (lo_num + offset - 1) / offset;
  const int last = std::min(col / offset, height - 1);
  return {first, last};
}

}  // namespace loclc
