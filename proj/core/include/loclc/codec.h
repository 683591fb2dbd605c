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

#ifndef LOCLC_CODEC_H_
#define LOCLC_CODEC_H_

// Encoder and the three decoders. All of them share one symbol order
// (CanonicalOrder) and one inference path per pixel, so a stream written
// once decodes identically under any scheme and any worker count:
//
//   kSequential  one pixel per model evaluation, H*W rounds
//   kParallel    one wavefront step per round: gather the step's patches,
//                evaluate them in parallel, then decode; T rounds
//   kSheared     decode column by column of the sheared layout with the
//                sheared first-layer kernel; L = T rounds
//
// Only the model evaluation and CDF construction run in parallel; the rANS
// state is touched by one thread in canonical order.

#include <cstdint>
#include <optional>
#include <string_view>

#include "loclc/container.h"
#include "loclc/image.h"
#include "loclc/model.h"

namespace loclc {

enum class Scheme { kSequential, kParallel, kSheared };

const char* SchemeName(Scheme scheme);
// Accepts seq|sequential, par|parallel, shear|sheared.
std::optional<Scheme> ParseScheme(std::string_view name);

struct CodecOptions {
  int threads = 0;  // 0 = all hardware threads
};

struct DecodeStats {
  int64_t rounds = 0;          // model-evaluation rounds (barriers)
  int64_t forward_passes = 0;  // per-pixel network evaluations
};

CompressedStream Encode(const Image& image, const Model& model,
                        const CodecOptions& options = {});

Image Decode(const CompressedStream& stream, const Model& model, Scheme scheme,
             const CodecOptions& options = {}, DecodeStats* stats = nullptr);

Image DecodeSequential(const CompressedStream& stream, const Model& model,
                       const CodecOptions& options = {},
                       DecodeStats* stats = nullptr);
Image DecodeParallel(const CompressedStream& stream, const Model& model,
                     const CodecOptions& options = {},
                     DecodeStats* stats = nullptr);
Image DecodeSheared(const CompressedStream& stream, const Model& model,
                    const CodecOptions& options = {},
                    DecodeStats* stats = nullptr);

// Expected number of decode rounds for a scheme.
int64_t ExpectedRounds(Scheme scheme, int height, int width, int horizon);

// sum -log2(freq / 2^16) over every symbol under the quantized CDFs the
// codec uses: the information content the rANS payload approaches.
double QuantizedCodeLength(const Image& image, const Model& model,
                           const CodecOptions& options = {});

struct TimingRecord {
  Scheme scheme = Scheme::kSequential;
  double wall_seconds = 0.0;  // median over repeats
  int64_t rounds = 0;
  uint64_t bits = 0;          // payload bits
  double bpd = 0.0;           // bits / (H * W * C)
};

// Encodes once, then times `repeats` decodes. Throws if a decode is not
// lossless.
TimingRecord Measure(const Model& model, const Image& image, Scheme scheme,
                     int repeats, const CodecOptions& options = {});

}  // namespace loclc

#endif  // LOCLC_CODEC_H_
