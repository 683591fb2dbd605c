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

#ifndef LOCLC_WEIGHTS_IO_H_
#define LOCLC_WEIGHTS_IO_H_

// NLWT weight file, little-endian:
//
//   "NLWT" | version u8 (=1) | h u8 | C u8 | hidden u16 | n_resblocks u8 |
//   n_mixtures u8 | sheared u8 |
//   per tensor, in fixed order:
//     name_len u16 | name (UTF-8) | rank u8 | extents u32 x rank | f32 data
//   FNV-1a-64 of every preceding byte (u64)
//
// Tensor order: first.kernel, first.bias, then block<k>.{w1,b1,w2,b2} for
// each residual block, then head.weight, head.bias.

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "loclc/model.h"

namespace loclc {

inline constexpr uint8_t kWeightsVersion = 1;

uint64_t Fnv1a64(std::span<const uint8_t> bytes);

std::vector<uint8_t> SaveWeights(const WeightSet& weights);

// Validates magic, version, config ranges, tensor names and extents,
// masked-cell zeros and the trailing hash.
WeightSet LoadWeights(std::span<const uint8_t> bytes);

// Hash of the serialized form; what SaveWeights would append.
uint64_t ComputeWeightsHash(const WeightSet& weights);

WeightSet ReadWeightsFile(const std::filesystem::path& path);
void WriteWeightsFile(const std::filesystem::path& path,
                      const WeightSet& weights);

}  // namespace loclc

#endif  // LOCLC_WEIGHTS_IO_H_
