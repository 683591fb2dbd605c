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

#ifndef LOCLC_MODEL_H_
#define LOCLC_MODEL_H_

// Local autoregressive network. The first layer is a masked convolution
// with an (h+1) x (2h+1) kernel covering rows i-h..i and columns j-h..j+h
// around the target (i, j); the bottom row only contributes columns left
// of the target. Everything after it is 1x1:
//
//   act   = elu(first(patch) + first_bias)
//   act  += w2 * elu(w1 * act + b1) + b2        (per residual block)
//   out   = head_w * act + head_b
//
// Pixels enter the network as v / 127.5 - 1; padding outside the image is
// pixel value 0.

#include <cstdint>
#include <span>
#include <vector>

#include "loclc/image.h"
#include "loclc/nnkernel.h"

namespace loclc {

class ShearedBuffer;

struct ModelConfig {
  int horizon = 3;
  int channels = 3;
  int hidden_width = 32;
  int n_resblocks = 1;
  int n_mixtures = 5;

  int KernelRows() const { return horizon + 1; }
  // 2h+1 for the plain kernel, h(h+2) once sheared.
  int KernelCols(bool sheared) const {
    return sheared ? horizon * (horizon + 2) : 2 * horizon + 1;
  }
  // Head width: logits + means + log-scales, plus coupling coefficients
  // for RGB.
  int ParamsPerPixel() const {
    return channels == 3 ? 10 * n_mixtures : 3 * n_mixtures;
  }

  bool operator==(const ModelConfig&) const = default;
};

// Throws kInvalidArgument unless every field is in range.
void ValidateConfig(const ModelConfig& config);

// A cell of the first-layer kernel that sees an already-decoded pixel.
struct Tap {
  int row = 0;
  int col = 0;
};

// Unmasked kernel cells in row-major order. Shearing moves row r right by
// r * (h + 1) and keeps the order, so both lists enumerate the same
// context pixels in the same sequence.
std::vector<Tap> ContextTaps(int horizon, bool sheared);

// True when kernel cell (row, col) must hold zero.
bool IsMaskedCell(int horizon, bool sheared, int row, int col);

struct ResBlock {
  Tensor w1, b1, w2, b2;
  bool operator==(const ResBlock&) const = default;
};

struct WeightSet {
  ModelConfig config;
  bool sheared = false;
  Tensor first_kernel;  // [h+1, KernelCols, C, hidden]
  Tensor first_bias;    // [hidden]
  std::vector<ResBlock> blocks;
  Tensor head_weight;   // [hidden, ParamsPerPixel]
  Tensor head_bias;     // [ParamsPerPixel]
  uint64_t hash = 0;    // FNV-1a-64 of the serialized form

  bool operator==(const WeightSet&) const = default;
};

// Distribution parameters for one pixel. Layout per mixture count K:
//   [logits K][means K*C][log-scales K*C][coeffs K*3 (C=3 only)]
// Means and scales live in the normalized [-1, 1] pixel domain.
struct OutputParams {
  int channels = 1;
  int n_mixtures = 1;
  std::vector<float> values;

  float logit(int k) const { return values[static_cast<size_t>(k)]; }
  float mean(int k, int c) const {
    return values[static_cast<size_t>(n_mixtures + k * channels + c)];
  }
  float log_scale(int k, int c) const {
    return values[static_cast<size_t>(n_mixtures * (1 + channels) +
                                      k * channels + c)];
  }
  // Coupling coefficient index 0: R->G, 1: R->B, 2: G->B (pre-tanh).
  float coeff(int k, int idx) const {
    return values[static_cast<size_t>(n_mixtures * (1 + 2 * channels) +
                                      k * 3 + idx)];
  }

  bool operator==(const OutputParams&) const = default;
};

inline float NormalizePixel(float v) { return v / 127.5f - 1.0f; }

// Params for the pixel at the bottom row, column h of `patch`
// ([h+1, 2h+1, C], raw 0..255 values). Masked cells are never read.
OutputParams ForwardPatch(const Tensor& patch, const WeightSet& weights);

// Params for every pixel of `image` via one padded convolution. Used for
// likelihood evaluation; the codec always goes through ForwardPatch.
std::vector<OutputParams> ForwardImage(const Image& image,
                                       const WeightSet& weights);

// Params for the pixel stored at buffer row `row`, sheared column `col`
// (0-based), reading rows row-h..row and columns col-h(h+2)..col-1.
// Requires sheared weights and a buffer whose offset is h+1 with margins
// of at least h rows and h(h+2) columns.
OutputParams ForwardSheared(const ShearedBuffer& buffer, int row, int col,
                            const WeightSet& sheared_weights);

// Lower-level entry shared by both paths: `tap_values` holds the context
// in ContextTaps order, channels innermost, already as raw pixel values.
void ForwardTaps(std::span<const float> tap_values, const WeightSet& weights,
                 OutputParams* out);

// Moves kernel row r right by r(h+1) into an (h+1) x h(h+2) kernel. All
// other tensors are shared unchanged. Shearing a sheared set throws.
WeightSet ShearWeights(const WeightSet& weights);

// Seeded Gaussian weights with masked cells zeroed.
WeightSet RandomWeights(const ModelConfig& config, uint64_t seed,
                        float gain = 1.0f);

// Random weights plus a built-in causal predictor (mean of the west and
// north neighbours per channel) so the model compresses smooth images.
WeightSet DefaultWeights(const ModelConfig& config, uint64_t seed = 1);

// Single-channel model assigning (close to) 1/256 to every symbol: 128
// equal-weight mixtures, each splitting its mass over two adjacent bins.
// Three-channel models are rejected: once the first channel is known the
// joint mixture's posterior concentrates on one component, so the later
// channels cannot stay uniform.
WeightSet UniformWeights(int horizon, int channels = 1);

ModelConfig DefaultConfig();

// Immutable bundle used by the codec: the weights plus their sheared
// counterpart, built once.
class Model {
 public:
  explicit Model(WeightSet weights);

  const ModelConfig& config() const { return weights_.config; }
  const WeightSet& weights() const { return weights_; }
  const WeightSet& sheared_weights() const { return sheared_; }
  uint64_t hash() const { return weights_.hash; }

 private:
  WeightSet weights_;
  WeightSet sheared_;
};

}  // namespace loclc

#endif  // LOCLC_MODEL_H_
