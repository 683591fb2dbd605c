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

#ifndef LOCLC_SCHEDULE_H_
#define LOCLC_SCHEDULE_H_

// Wavefront decode order for a local model with horizon h. Pixel (i, j)
// (0-based) depends on rows i-h..i-1 at columns j-h..j+h and on row i at
// columns j-h..j-1, so it can be decoded at step
//
//   t(i, j) = j + i * (h + 1)
//
// giving T = W + (H - 1)(h + 1) steps with at most
// min(H, floor((W + h) / (h + 1))) pixels per step. Steps are stored even when empty, which happens when
// W < h + 1, so step t always means the same thing.

#include <cstdint>
#include <memory>
#include <vector>

#include "loclc/image.h"
#include "loclc/nnkernel.h"

namespace loclc {

struct Position {
  int row = 0;
  int col = 0;
  bool operator==(const Position&) const = default;
};

struct WavefrontSchedule {
  int height = 0;
  int width = 0;
  int horizon = 0;
  // steps[t] lists the pixels decodable at step t, rows ascending.
  std::vector<std::vector<Position>> steps;

  int num_steps() const { return static_cast<int>(steps.size()); }
  size_t MaxStepSize() const;
};

inline int Timestep(int row, int col, int horizon) {
  return col + row * (horizon + 1);
}

inline int NumSteps(int height, int width, int horizon) {
  return width + (height - 1) * (horizon + 1);
}

// Largest step size. Pixels sharing a step sit h+1 columns apart in
// consecutive rows, so the width bounds it as well as the height; for a
// D x D image this is floor((D + h) / (h + 1)).
inline int MaxParallelism(int height, int width, int horizon) {
  const int by_width = (width + horizon) / (horizon + 1);
  return height < by_width ? height : by_width;
}

WavefrontSchedule BuildSchedule(int height, int width, int horizon);

// Process-wide cache keyed by (H, W, h). Thread-safe.
std::shared_ptr<const WavefrontSchedule> CachedSchedule(int height, int width,
                                                        int horizon);

// Context patch [h+1, 2h+1, C] for target (row, col): image rows
// row-h..row, cols col-h..col+h, zero outside the image. Cells at or after
// the target in raster order are copied as-is; the model never reads them.
Tensor GatherPatch(const Image& image, int row, int col, int horizon);

// Same, written into `out` (size (h+1)(2h+1)C).
void GatherPatchInto(const Image& image, int row, int col, int horizon,
                     float* out);

struct SymbolRef {
  int row = 0;
  int col = 0;
  int channel = 0;
  bool operator==(const SymbolRef&) const = default;
};

// The one symbol order shared by the encoder and every decoder: step
// ascending, then channel, then row. Channel-major inside a step lets all
// pixels of a step build their channel-c distributions together.
std::vector<SymbolRef> CanonicalOrder(int height, int width, int channels,
                                      int horizon);

}  // namespace loclc

#endif  // LOCLC_SCHEDULE_H_
