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

#include "loclc/model.h"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include "loclc/error.h"
#include "loclc/shear.h"
#include "loclc/weights_io.h"

namespace loclc {

namespace {

// Highest unmasked column index in kernel row r of the plain kernel.
int LastTapCol(int horizon, int r) {
  return r < horizon ? 2 * horizon : horizon - 1;
}

int ShearShift(int horizon, int r) { return r * (horizon + 1); }

// Portable standard normal draws from mt19937_64 (std::normal_distribution
// is implementation-defined).
class Gaussian {
 public:
  explicit Gaussian(uint64_t seed) : rng_(seed) {}

  float operator()(float stddev) {
    const double u1 = Uniform(), u2 = Uniform();
    const double z = std::sqrt(-2.0 * std::log(1.0 - u1)) *
                     std::cos(2.0 * std::numbers::pi * u2);
    return static_cast<float>(z * stddev);
  }
  double Uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 rng_;
};

void Fill(Tensor& t, Gaussian& g, float stddev) {
  for (float& v : t.data()) v = g(stddev);
}

void CheckUnsheared(const WeightSet& w, const char* what) {
  if (w.sheared) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " requires unsheared weights");
  }
}

}  // namespace

void ValidateConfig(const ModelConfig& c) {
  if (c.horizon < 1) throw Error(ErrorCode::kInvalidArgument, "horizon must be >= 1");
  if (c.channels != 1 && c.channels != 3) {
    throw Error(ErrorCode::kInvalidArgument, "channels must be 1 or 3");
  }
  if (c.hidden_width < 1) throw Error(ErrorCode::kInvalidArgument, "hidden width must be >= 1");
  if (c.n_resblocks < 0) throw Error(ErrorCode::kInvalidArgument, "negative block count");
  if (c.n_mixtures < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one mixture");
}

std::vector<Tap> ContextTaps(int horizon, bool sheared) {
  std::vector<Tap> taps;
  for (int r = 0; r <= horizon; ++r) {
    for (int k = 0; k <= LastTapCol(horizon, r); ++k) {
      taps.push_back({r, sheared ? k + ShearShift(horizon, r) : k});
    }
  }
  return taps;
}

bool IsMaskedCell(int horizon, bool sheared, int row, int col) {
  const int k = sheared ? col - ShearShift(horizon, row) : col;
  return k < 0 || k > LastTapCol(horizon, row);
}

void ForwardTaps(std::span<const float> tap_values, const WeightSet& weights,
                 OutputParams* out) {
  const ModelConfig& cfg = weights.config;
  const int h = cfg.horizon;
  const int channels = cfg.channels;
  const int hidden = cfg.hidden_width;
  const int kernel_cols = cfg.KernelCols(weights.sheared);

  std::vector<float> act(static_cast<size_t>(hidden), 0.0f);
  std::vector<float> tmp(static_cast<size_t>(hidden));
  std::vector<float> res(static_cast<size_t>(hidden));

  // First layer: taps in row-major order, channels innermost.
  const float* kernel = weights.first_kernel.raw();
  size_t idx = 0;
  for (int r = 0; r <= h; ++r) {
    for (int k = 0; k <= LastTapCol(h, r); ++k) {
      const int col = weights.sheared ? k + ShearShift(h, r) : k;
      const float* w =
          kernel + (static_cast<size_t>(r) * kernel_cols + col) * channels * hidden;
      for (int ch = 0; ch < channels; ++ch) {
        const float v = NormalizePixel(tap_values[idx++]);
        const float* wc = w + static_cast<size_t>(ch) * hidden;
        for (int o = 0; o < hidden; ++o) act[o] += v * wc[o];
      }
    }
  }
  const float* first_bias = weights.first_bias.raw();
  for (int o = 0; o < hidden; ++o) act[o] = Elu(act[o] + first_bias[o]);

  for (const ResBlock& block : weights.blocks) {
    AffineRow(act.data(), hidden, block.w1.raw(), block.b1.raw(), hidden,
              tmp.data());
    EluInPlace(tmp);
    AffineRow(tmp.data(), hidden, block.w2.raw(), block.b2.raw(), hidden,
              res.data());
    for (int o = 0; o < hidden; ++o) act[o] += res[o];
  }

  out->channels = channels;
  out->n_mixtures = cfg.n_mixtures;
  out->values.resize(static_cast<size_t>(cfg.ParamsPerPixel()));
  AffineRow(act.data(), hidden, weights.head_weight.raw(),
            weights.head_bias.raw(), cfg.ParamsPerPixel(), out->values.data());
}

OutputParams ForwardPatch(const Tensor& patch, const WeightSet& weights) {
  CheckUnsheared(weights, "ForwardPatch");
  const ModelConfig& cfg = weights.config;
  const int h = cfg.horizon;
  if (patch.rank() != 3 || patch.dim(0) != h + 1 || patch.dim(1) != 2 * h + 1 ||
      patch.dim(2) != cfg.channels) {
    throw Error(ErrorCode::kShape, "patch must be [h+1, 2h+1, C]");
  }
  std::vector<float> taps;
  taps.reserve(static_cast<size_t>((h + 1) * (2 * h + 1) * cfg.channels));
  for (int r = 0; r <= h; ++r) {
    for (int k = 0; k <= LastTapCol(h, r); ++k) {
      for (int ch = 0; ch < cfg.channels; ++ch) taps.push_back(patch.at(r, k, ch));
    }
  }
  OutputParams out;
  ForwardTaps(taps, weights, &out);
  return out;
}

OutputParams ForwardSheared(const ShearedBuffer& buffer, int row, int col,
                            const WeightSet& sheared_weights) {
  const ModelConfig& cfg = sheared_weights.config;
  const int h = cfg.horizon;
  if (!sheared_weights.sheared) {
    throw Error(ErrorCode::kInvalidArgument, "ForwardSheared requires sheared weights");
  }
  if (buffer.offset() != h + 1 || buffer.channels() != cfg.channels) {
    throw Error(ErrorCode::kShape, "sheared buffer does not match the model");
  }
  const int left = h * (h + 2);
  if (row - h < -buffer.margin_rows() || col - left < -buffer.margin_cols()) {
    throw Error(ErrorCode::kShape, "sheared buffer margins too small");
  }
  std::vector<float> taps;
  taps.reserve(static_cast<size_t>((h + 1) * (2 * h + 1) * cfg.channels));
  for (int r = 0; r <= h; ++r) {
    const int buf_row = row - h + r;
    const int base_col = col - left + ShearShift(h, r);
    for (int k = 0; k <= LastTapCol(h, r); ++k) {
      for (int ch = 0; ch < cfg.channels; ++ch) {
        taps.push_back(buffer.at(buf_row, base_col + k, ch));
      }
    }
  }
  OutputParams out;
  ForwardTaps(taps, sheared_weights, &out);
  return out;
}

std::vector<OutputParams> ForwardImage(const Image& image,
                                       const WeightSet& weights) {
  CheckUnsheared(weights, "ForwardImage");
  const ModelConfig& cfg = weights.config;
  if (image.channels() != cfg.channels) {
    throw Error(ErrorCode::kShape, "image/model channel mismatch");
  }
  const int h = cfg.horizon;
  const int height = image.height(), width = image.width();

  // Zero pixels above, left and right; the bottom row of the kernel never
  // reaches below the target.
  Tensor padded({height + h, width + 2 * h, cfg.channels});
  for (float& v : padded.data()) v = NormalizePixel(0.0f);
  for (int i = 0; i < height; ++i) {
    for (int j = 0; j < width; ++j) {
      for (int ch = 0; ch < cfg.channels; ++ch) {
        padded.at(i + h, j + h, ch) = NormalizePixel(image.at(i, j, ch));
      }
    }
  }

  Tensor act = Conv2dValid(padded, weights.first_kernel, Anchor{h, h});
  const int hidden = cfg.hidden_width;
  for (size_t p = 0; p < act.size(); p += static_cast<size_t>(hidden)) {
    for (int o = 0; o < hidden; ++o) act[p + o] = act[p + o] + weights.first_bias[o];
  }
  act = Activation(act);
  for (const ResBlock& block : weights.blocks) {
    Tensor t = Activation(Conv1x1(act, block.w1, block.b1));
    t = Conv1x1(t, block.w2, block.b2);
    for (size_t i = 0; i < act.size(); ++i) act[i] += t[i];
  }
  const Tensor head = Conv1x1(act, weights.head_weight, weights.head_bias);

  const size_t per_pixel = static_cast<size_t>(cfg.ParamsPerPixel());
  std::vector<OutputParams> params(static_cast<size_t>(height) * width);
  for (size_t p = 0; p < params.size(); ++p) {
    params[p].channels = cfg.channels;
    params[p].n_mixtures = cfg.n_mixtures;
    params[p].values.assign(head.raw() + p * per_pixel,
                            head.raw() + (p + 1) * per_pixel);
  }
  return params;
}

WeightSet ShearWeights(const WeightSet& weights) {
  if (weights.sheared) {
    throw Error(ErrorCode::kInvalidArgument, "weights are already sheared");
  }
  const ModelConfig& cfg = weights.config;
  const int h = cfg.horizon;
  WeightSet out = weights;
  out.sheared = true;
  out.first_kernel = Tensor({cfg.KernelRows(), cfg.KernelCols(true),
                             cfg.channels, cfg.hidden_width});
  for (const Tap& tap : ContextTaps(h, false)) {
    const int col = tap.col + ShearShift(h, tap.row);
    for (int ch = 0; ch < cfg.channels; ++ch) {
      for (int o = 0; o < cfg.hidden_width; ++o) {
        out.first_kernel.at(tap.row, col, ch, o) =
            weights.first_kernel.at(tap.row, tap.col, ch, o);
      }
    }
  }
  out.hash = ComputeWeightsHash(out);
  return out;
}

WeightSet RandomWeights(const ModelConfig& config, uint64_t seed, float gain) {
  ValidateConfig(config);
  Gaussian g(seed);
  const int h = config.horizon;
  const int hidden = config.hidden_width;
  const int params = config.ParamsPerPixel();
  const float fan_in = static_cast<float>(ContextTaps(h, false).size() *
                                          static_cast<size_t>(config.channels));

  WeightSet w;
  w.config = config;
  w.first_kernel =
      Tensor({config.KernelRows(), config.KernelCols(false), config.channels, hidden});
  Fill(w.first_kernel, g, gain / std::sqrt(fan_in));
  for (int r = 0; r < config.KernelRows(); ++r) {
    for (int c = 0; c < config.KernelCols(false); ++c) {
      if (!IsMaskedCell(h, false, r, c)) continue;
      for (int ch = 0; ch < config.channels; ++ch) {
        for (int o = 0; o < hidden; ++o) w.first_kernel.at(r, c, ch, o) = 0.0f;
      }
    }
  }
  w.first_bias = Tensor({hidden});
  Fill(w.first_bias, g, 0.1f * gain);
  const float inv_sqrt_hidden = 1.0f / std::sqrt(static_cast<float>(hidden));
  for (int b = 0; b < config.n_resblocks; ++b) {
    ResBlock block{Tensor({hidden, hidden}), Tensor({hidden}),
                   Tensor({hidden, hidden}), Tensor({hidden})};
    Fill(block.w1, g, gain * inv_sqrt_hidden);
    Fill(block.b1, g, 0.1f * gain);
    Fill(block.w2, g, 0.5f * gain * inv_sqrt_hidden);
    Fill(block.b2, g, 0.1f * gain);
    w.blocks.push_back(std::move(block));
  }
  w.head_weight = Tensor({hidden, params});
  Fill(w.head_weight, g, 0.5f * gain * inv_sqrt_hidden);
  w.head_bias = Tensor({params});
  Fill(w.head_bias, g, 0.5f * gain);
  // Start log-scales near exp(-2) so distributions are neither flat nor
  // degenerate.
  const size_t scale_begin =
      static_cast<size_t>(config.n_mixtures * (1 + config.channels));
  for (size_t i = scale_begin;
       i < scale_begin + static_cast<size_t>(config.n_mixtures * config.channels);
       ++i) {
    w.head_bias[i] -= 2.0f;
  }
  w.hash = ComputeWeightsHash(w);
  return w;
}

WeightSet DefaultWeights(const ModelConfig& config, uint64_t seed) {
  WeightSet w = RandomWeights(config, seed, 0.5f);
  const int h = config.horizon;
  const int channels = config.channels;
  const int hidden = config.hidden_width;
  const int mixtures = config.n_mixtures;
  if (hidden < channels) {
    throw Error(ErrorCode::kInvalidArgument,
                "default weights need hidden_width >= channels");
  }

  // Units 0..C-1 carry (west + north) / 2 + 1 for their own channel. The
  // +1 keeps the ELU in its identity branch.
  for (int r = 0; r < config.KernelRows(); ++r) {
    for (int c = 0; c < config.KernelCols(false); ++c) {
      for (int ch = 0; ch < channels; ++ch) {
        for (int u = 0; u < channels; ++u) w.first_kernel.at(r, c, ch, u) = 0.0f;
      }
    }
  }
  for (int ch = 0; ch < channels; ++ch) {
    w.first_kernel.at(h, h - 1, ch, ch) = 0.5f;  // west
    w.first_kernel.at(h - 1, h, ch, ch) = 0.5f;  // north
    w.first_bias[ch] = 1.0f;
  }
  for (ResBlock& block : w.blocks) {
    for (int i = 0; i < hidden; ++i) {
      for (int u = 0; u < channels; ++u) block.w2.at(i, u) = 0.0f;
    }
    for (int u = 0; u < channels; ++u) block.b2[u] = 0.0f;
  }

  auto mean_index = [&](int k, int c) { return mixtures + k * channels + c; };
  auto scale_index = [&](int k, int c) {
    return mixtures * (1 + channels) + k * channels + c;
  };
  Gaussian g(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int i = 0; i < hidden; ++i) {
    for (int p = 0; p < config.ParamsPerPixel(); ++p) {
      w.head_weight.at(i, p) = g(0.004f);
    }
  }
  for (int p = 0; p < config.ParamsPerPixel(); ++p) w.head_bias[p] = 0.0f;
  for (int k = 0; k < mixtures; ++k) {
    const float spread = static_cast<float>(k) - 0.5f * static_cast<float>(mixtures - 1);
    for (int c = 0; c < channels; ++c) {
      for (int u = 0; u < channels; ++u) {
        w.head_weight.at(u, mean_index(k, c)) = u == c ? 1.0f : 0.0f;
      }
      w.head_bias[mean_index(k, c)] = -1.0f + 0.02f * spread;
      w.head_bias[scale_index(k, c)] = -3.5f + 0.4f * static_cast<float>(k);
    }
  }
  w.hash = ComputeWeightsHash(w);
  return w;
}

WeightSet UniformWeights(int horizon, int channels) {
  if (channels != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "a uniform head is only representable for 1-channel models");
  }
  ModelConfig config;
  config.horizon = horizon;
  config.channels = channels;
  config.hidden_width = 4;
  config.n_resblocks = 0;
  config.n_mixtures = 128;
  ValidateConfig(config);

  WeightSet w;
  w.config = config;
  w.first_kernel = Tensor({config.KernelRows(), config.KernelCols(false),
                           channels, config.hidden_width});
  w.first_bias = Tensor({config.hidden_width});
  w.head_weight = Tensor({config.hidden_width, config.ParamsPerPixel()});
  w.head_bias = Tensor({config.ParamsPerPixel()});
  // Mixture k sits on the edge between bins 2k and 2k+1 with a tiny scale,
  // so it splits its mass evenly across exactly those two bins.
  const int mixtures = config.n_mixtures;
  for (int k = 0; k < mixtures; ++k) {
    w.head_bias[mixtures + k] = NormalizePixel(2.0f * static_cast<float>(k) + 0.5f);
    w.head_bias[2 * mixtures + k] = -9.0f;
  }
  w.hash = ComputeWeightsHash(w);
  return w;
}

ModelConfig DefaultConfig() {
  ModelConfig config;
  config.horizon = 3;
  config.channels = 3;
  config.hidden_width = 32;
  config.n_resblocks = 1;
  config.n_mixtures = 5;
  return config;
}

Model::Model(WeightSet weights) : weights_(std::move(weights)) {
  if (weights_.sheared) {
    throw Error(ErrorCode::kInvalidArgument,
                "a codec model must be built from unsheared weights");
  }
  ValidateConfig(weights_.config);
  if (weights_.hash == 0) weights_.hash = ComputeWeightsHash(weights_);
  sheared_ = ShearWeights(weights_);
}

}  // namespace loclc
