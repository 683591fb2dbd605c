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

#include "loclc/weights_io.h"

#include <string>
#include <utility>

#include "loclc/byte_io.h"
#include "loclc/error.h"

namespace loclc {

namespace {

constexpr char kMagic[4] = {'N', 'L', 'W', 'T'};

struct NamedTensor {
  std::string name;
  std::vector<int> dims;
};

// Expected tensors for a config, in file order.
std::vector<NamedTensor> Layout(const ModelConfig& config, bool sheared) {
  const int hidden = config.hidden_width;
  std::vector<NamedTensor> layout;
  layout.push_back({"first.kernel",
                    {config.KernelRows(), config.KernelCols(sheared),
                     config.channels, hidden}});
  layout.push_back({"first.bias", {hidden}});
  for (int b = 0; b < config.n_resblocks; ++b) {
    const std::string prefix = "block" + std::to_string(b) + ".";
    layout.push_back({prefix + "w1", {hidden, hidden}});
    layout.push_back({prefix + "b1", {hidden}});
    layout.push_back({prefix + "w2", {hidden, hidden}});
    layout.push_back({prefix + "b2", {hidden}});
  }
  layout.push_back({"head.weight", {hidden, config.ParamsPerPixel()}});
  layout.push_back({"head.bias", {config.ParamsPerPixel()}});
  return layout;
}

std::vector<const Tensor*> Tensors(const WeightSet& w) {
  std::vector<const Tensor*> out = {&w.first_kernel, &w.first_bias};
  for (const ResBlock& b : w.blocks) {
    out.insert(out.end(), {&b.w1, &b.b1, &b.w2, &b.b2});
  }
  out.insert(out.end(), {&w.head_weight, &w.head_bias});
  return out;
}

void CheckSerializable(const ModelConfig& c) {
  ValidateConfig(c);
  if (c.horizon > 255 || c.n_resblocks > 255 || c.n_mixtures > 255 ||
      c.hidden_width > 65535) {
    throw Error(ErrorCode::kInvalidArgument,
                "config does not fit the weight-file header fields");
  }
}

void CheckMask(const WeightSet& w) {
  const Tensor& k = w.first_kernel;
  const int h = w.config.horizon;
  for (int r = 0; r < k.dim(0); ++r) {
    for (int c = 0; c < k.dim(1); ++c) {
      if (!IsMaskedCell(h, w.sheared, r, c)) continue;
      for (int ci = 0; ci < k.dim(2); ++ci) {
        for (int o = 0; o < k.dim(3); ++o) {
          if (k.at(r, c, ci, o) != 0.0f) {
            throw Error(ErrorCode::kValidation,
                        "nonzero weight in masked kernel cell (" +
                            std::to_string(r) + ", " + std::to_string(c) + ")");
          }
        }
      }
    }
  }
}

void WriteBody(const WeightSet& w, ByteWriter& out) {
  const ModelConfig& c = w.config;
  CheckSerializable(c);
  out.Str(std::string_view(kMagic, 4));
  out.U8(kWeightsVersion);
  out.U8(static_cast<uint8_t>(c.horizon));
  out.U8(static_cast<uint8_t>(c.channels));
  out.U16(static_cast<uint16_t>(c.hidden_width));
  out.U8(static_cast<uint8_t>(c.n_resblocks));
  out.U8(static_cast<uint8_t>(c.n_mixtures));
  out.U8(w.sheared ? 1 : 0);

  const auto layout = Layout(c, w.sheared);
  const auto tensors = Tensors(w);
  if (layout.size() != tensors.size()) {
    throw Error(ErrorCode::kShape, "weight set does not match its config");
  }
  for (size_t t = 0; t < layout.size(); ++t) {
    if (tensors[t]->dims() != layout[t].dims) {
      throw Error(ErrorCode::kShape, "tensor " + layout[t].name +
                                         " has unexpected extents");
    }
    out.U16(static_cast<uint16_t>(layout[t].name.size()));
    out.Str(layout[t].name);
    out.U8(static_cast<uint8_t>(layout[t].dims.size()));
    for (int d : layout[t].dims) out.U32(static_cast<uint32_t>(d));
    for (float v : tensors[t]->data()) out.F32(v);
  }
}

}  // namespace

uint64_t Fnv1a64(std::span<const uint8_t> bytes) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (uint8_t b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

uint64_t ComputeWeightsHash(const WeightSet& weights) {
  ByteWriter out;
  WriteBody(weights, out);
  return Fnv1a64(out.bytes());
}

std::vector<uint8_t> SaveWeights(const WeightSet& weights) {
  CheckMask(weights);
  ByteWriter out;
  WriteBody(weights, out);
  out.U64(Fnv1a64(out.bytes()));
  return out.Take();
}

WeightSet LoadWeights(std::span<const uint8_t> bytes) {
  ByteReader in(bytes);
  const std::string magic = in.Str(4);
  if (magic != std::string_view(kMagic, 4)) {
    throw Error(ErrorCode::kFormat, "not an NLWT weight file (bad magic)");
  }
  const uint8_t version = in.U8();
  if (version != kWeightsVersion) {
    throw Error(ErrorCode::kFormat,
                "unsupported weight-file version " + std::to_string(version));
  }
  WeightSet w;
  w.config.horizon = in.U8();
  w.config.channels = in.U8();
  w.config.hidden_width = in.U16();
  w.config.n_resblocks = in.U8();
  w.config.n_mixtures = in.U8();
  const uint8_t sheared = in.U8();
  if (sheared > 1) throw Error(ErrorCode::kFormat, "bad sheared flag");
  w.sheared = sheared == 1;
  try {
    ValidateConfig(w.config);
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormat, e.what());
  }

  std::vector<Tensor> tensors;
  for (const NamedTensor& expected : Layout(w.config, w.sheared)) {
    const uint16_t name_len = in.U16();
    const std::string name = in.Str(name_len);
    if (name != expected.name) {
      throw Error(ErrorCode::kFormat,
                  "expected tensor " + expected.name + ", found " + name);
    }
    const uint8_t rank = in.U8();
    std::vector<int> dims;
    for (int d = 0; d < rank; ++d) dims.push_back(static_cast<int>(in.U32()));
    if (dims != expected.dims) {
      throw Error(ErrorCode::kFormat, "tensor " + name + " has unexpected extents");
    }
    size_t count = 1;
    for (int d : dims) count *= static_cast<size_t>(d);
    std::vector<float> data(count);
    for (float& v : data) v = in.F32();
    tensors.emplace_back(std::move(dims), std::move(data));
  }
  const size_t body_len = in.position();
  const uint64_t stored = in.U64();
  if (in.remaining() != 0) {
    throw Error(ErrorCode::kFormat, "trailing bytes after weight hash");
  }
  const uint64_t actual = Fnv1a64(bytes.first(body_len));
  if (stored != actual) {
    throw Error(ErrorCode::kValidation, "weight-file hash mismatch");
  }

  size_t t = 0;
  w.first_kernel = std::move(tensors[t++]);
  w.first_bias = std::move(tensors[t++]);
  for (int b = 0; b < w.config.n_resblocks; ++b) {
    ResBlock block;
    block.w1 = std::move(tensors[t++]);
    block.b1 = std::move(tensors[t++]);
    block.w2 = std::move(tensors[t++]);
    block.b2 = std::move(tensors[t++]);
    w.blocks.push_back(std::move(block));
  }
  w.head_weight = std::move(tensors[t++]);
  w.head_bias = std::move(tensors[t++]);
  CheckMask(w);
  w.hash = actual;
  return w;
}

WeightSet ReadWeightsFile(const std::filesystem::path& path) {
  return LoadWeights(ReadFileBytes(path));
}

void WriteWeightsFile(const std::filesystem::path& path,
                      const WeightSet& weights) {
  WriteFileBytes(path, SaveWeights(weights));
}

}  // namespace loclc
