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

#include "loclc/nnkernel.h"

#include <string>
#include <utility>

#include "loclc/error.h"

namespace loclc {

namespace {

size_t Product(const std::vector<int>& dims) {
  size_t n = 1;
  for (int d : dims) n *= static_cast<size_t>(d);
  return n;
}

void CheckDims(const std::vector<int>& dims) {
  if (dims.empty() || dims.size() > 4) {
    throw Error(ErrorCode::kShape,
                "tensor rank must be 1..4, got " + std::to_string(dims.size()));
  }
  for (int d : dims) {
    if (d < 1) throw Error(ErrorCode::kShape, "tensor extents must be >= 1");
  }
}

}  // namespace

Tensor::Tensor(std::vector<int> dims) : dims_(std::move(dims)) {
  CheckDims(dims_);
  data_.assign(Product(dims_), 0.0f);
}

Tensor::Tensor(std::vector<int> dims, std::vector<float> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
  CheckDims(dims_);
  if (data_.size() != Product(dims_)) {
    throw Error(ErrorCode::kShape, "tensor data length " +
                                       std::to_string(data_.size()) +
                                       " does not match extents");
  }
}

size_t Tensor::Offset(std::initializer_list<int> index) const {
  size_t offset = 0;
  size_t axis = 0;
  for (int i : index) {
    offset = offset * static_cast<size_t>(dims_[axis]) + static_cast<size_t>(i);
    ++axis;
  }
  return offset;
}

Tensor Conv2dValid(const Tensor& input, const Tensor& kernel, Anchor anchor) {
  if (input.rank() != 3 || kernel.rank() != 4) {
    throw Error(ErrorCode::kShape, "conv2d expects [H,W,Cin] and [kh,kw,Cin,Cout]");
  }
  const int height = input.dim(0), width = input.dim(1), cin = input.dim(2);
  const int kh = kernel.dim(0), kw = kernel.dim(1), cout = kernel.dim(3);
  if (kernel.dim(2) != cin) {
    throw Error(ErrorCode::kShape, "conv2d channel mismatch");
  }
  if (kh > height || kw > width) {
    throw Error(ErrorCode::kShape, "conv2d kernel larger than input");
  }
  if (anchor.row < 0 || anchor.row >= kh || anchor.col < 0 ||
      anchor.col >= kw) {
    throw Error(ErrorCode::kShape, "conv2d anchor outside kernel");
  }

  const int out_h = height - kh + 1, out_w = width - kw + 1;
  Tensor output({out_h, out_w, cout});
  const float* in = input.raw();
  const float* k = kernel.raw();
  for (int r = 0; r < out_h; ++r) {
    for (int c = 0; c < out_w; ++c) {
      float* acc = &output.at(r, c, 0);
      for (int kr = 0; kr < kh; ++kr) {
        for (int kc = 0; kc < kw; ++kc) {
          const float* px =
              in + (static_cast<size_t>(r + kr) * width + (c + kc)) * cin;
          const float* kw_row =
              k + (static_cast<size_t>(kr) * kw + kc) * cin * cout;
          for (int ci = 0; ci < cin; ++ci) {
            const float v = px[ci];
            const float* w = kw_row + static_cast<size_t>(ci) * cout;
            for (int o = 0; o < cout; ++o) acc[o] += v * w[o];
          }
        }
      }
    }
  }
  return output;
}

Tensor Conv1x1(const Tensor& input, const Tensor& weight, const Tensor& bias) {
  if (weight.rank() != 2 || bias.rank() != 1) {
    throw Error(ErrorCode::kShape, "conv1x1 expects weight [Cin,Cout], bias [Cout]");
  }
  const int cin = weight.dim(0), cout = weight.dim(1);
  if (input.dim(input.rank() - 1) != cin || bias.dim(0) != cout) {
    throw Error(ErrorCode::kShape, "conv1x1 channel mismatch");
  }
  std::vector<int> dims = input.dims();
  dims.back() = cout;
  Tensor output(dims);
  const size_t positions = input.size() / static_cast<size_t>(cin);
  for (size_t p = 0; p < positions; ++p) {
    AffineRow(input.raw() + p * cin, cin, weight.raw(), bias.raw(), cout,
              output.raw() + p * cout);
  }
  return output;
}

Tensor Activation(const Tensor& x) {
  Tensor y = x;
  EluInPlace(y.data());
  return y;
}

}  // namespace loclc
