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

#ifndef LOCLC_NNKERNEL_H_
#define LOCLC_NNKERNEL_H_

// Minimal float32 dense/convolution arithmetic. Every reduction runs in a
// fixed order (row, col, channel) starting from +0.0f with the bias added
// last, so the same inputs produce the same bits no matter how callers
// batch or distribute the work. Build with -ffp-contract=off.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace loclc {

class Tensor {
 public:
  Tensor() = default;
  // Zero-filled tensor. Rank must be 1..4 and every extent >= 1.
  explicit Tensor(std::vector<int> dims);
  Tensor(std::vector<int> dims, std::vector<float> data);

  const std::vector<int>& dims() const { return dims_; }
  int rank() const { return static_cast<int>(dims_.size()); }
  int dim(int axis) const { return dims_[static_cast<size_t>(axis)]; }
  size_t size() const { return data_.size(); }

  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }
  float* raw() { return data_.data(); }
  const float* raw() const { return data_.data(); }

  float& operator[](size_t i) { return data_[i]; }
  float operator[](size_t i) const { return data_[i]; }

  // Row-major element access; the number of indices must equal rank().
  float& at(int i0, int i1) { return data_[Offset({i0, i1})]; }
  float& at(int i0, int i1, int i2) { return data_[Offset({i0, i1, i2})]; }
  float& at(int i0, int i1, int i2, int i3) {
    return data_[Offset({i0, i1, i2, i3})];
  }
  float at(int i0, int i1) const { return data_[Offset({i0, i1})]; }
  float at(int i0, int i1, int i2) const {
    return data_[Offset({i0, i1, i2})];
  }
  float at(int i0, int i1, int i2, int i3) const {
    return data_[Offset({i0, i1, i2, i3})];
  }

  bool operator==(const Tensor& other) const = default;

 private:
  size_t Offset(std::initializer_list<int> index) const;

  std::vector<int> dims_;
  std::vector<float> data_;
};

struct Anchor {
  int row = 0;
  int col = 0;
};

// Valid (unpadded) 2-D convolution.
//   input  [H, W, Cin], kernel [kh, kw, Cin, Cout]
//   output [H - kh + 1, W - kw + 1, Cout]
// Output (r, c) is the response for input position (r + anchor.row,
// c + anchor.col); the anchor must lie inside the kernel. Callers pad
// explicitly.
Tensor Conv2dValid(const Tensor& input, const Tensor& kernel, Anchor anchor);

// Per-position affine map over the trailing axis.
//   input [..., Cin], weight [Cin, Cout], bias [Cout] -> [..., Cout]
Tensor Conv1x1(const Tensor& input, const Tensor& weight, const Tensor& bias);

// Elementwise ELU with alpha = 1.
Tensor Activation(const Tensor& x);

inline float Elu(float x) { return x > 0.0f ? x : std::expm1(x); }

// out[o] = (sum_i x[i] * w[i * cout + o]) + b[o], i ascending.
// The shared inner loop behind Conv1x1 and the model's per-pixel path.
inline void AffineRow(const float* x, int cin, const float* w, const float* b,
                      int cout, float* out) {
  for (int o = 0; o < cout; ++o) out[o] = 0.0f;
  for (int i = 0; i < cin; ++i) {
    const float xi = x[i];
    const float* wi = w + static_cast<size_t>(i) * cout;
    for (int o = 0; o < cout; ++o) out[o] += xi * wi[o];
  }
  for (int o = 0; o < cout; ++o) out[o] += b[o];
}

inline void EluInPlace(std::span<float> values) {
  for (float& v : values) v = Elu(v);
}

}  // namespace loclc

#endif  // LOCLC_NNKERNEL_H_
