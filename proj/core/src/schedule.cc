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

#include "loclc/schedule.h"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "loclc/error.h"

namespace loclc {

size_t WavefrontSchedule::MaxStepSize() const {
  size_t best = 0;
  for (const auto& step : steps) best = std::max(best, step.size());
  return best;
}

WavefrontSchedule BuildSchedule(int height, int width, int horizon) {
  if (height < 1 || width < 1) {
    throw Error(ErrorCode::kInvalidArgument, "schedule extents must be >= 1");
  }
  if (horizon < 1) throw Error(ErrorCode::kInvalidArgument, "horizon must be >= 1");
  WavefrontSchedule s;
  s.height = height;
  s.width = width;
  s.horizon = horizon;
  s.steps.resize(static_cast<size_t>(NumSteps(height, width, horizon)));
  for (int i = 0; i < height; ++i) {
    for (int j = 0; j < width; ++j) {
      s.steps[static_cast<size_t>(Timestep(i, j, horizon))].push_back({i, j});
    }
  }
  return s;
}

std::shared_ptr<const WavefrontSchedule> CachedSchedule(int height, int width,
                                                        int horizon) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>,
                  std::shared_ptr<const WavefrontSchedule>>
      cache;
  const auto key = std::make_tuple(height, width, horizon);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const WavefrontSchedule>(
      BuildSchedule(height, width, horizon));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(built)).first->second;
}

void GatherPatchInto(const Image& image, int row, int col, int horizon,
                     float* out) {
  const int channels = image.channels();
  for (int r = 0; r <= horizon; ++r) {
    const int i = row - horizon + r;
    for (int k = 0; k <= 2 * horizon; ++k) {
      const int j = col - horizon + k;
      const bool inside = image.Contains(i, j);
      for (int ch = 0; ch < channels; ++ch) {
        *out++ = inside ? static_cast<float>(image.at(i, j, ch)) : 0.0f;
      }
    }
  }
}

Tensor GatherPatch(const Image& image, int row, int col, int horizon) {
  if (!image.Contains(row, col)) {
    throw Error(ErrorCode::kInvalidArgument, "patch target outside image");
  }
  Tensor patch({horizon + 1, 2 * horizon + 1, image.channels()});
  GatherPatchInto(image, row, col, horizon, patch.raw());
  return patch;
}

std::vector<SymbolRef> CanonicalOrder(int height, int width, int channels,
                                      int horizon) {
  const auto schedule = CachedSchedule(height, width, horizon);
  std::vector<SymbolRef> order;
  order.reserve(static_cast<size_t>(height) * width * channels);
  for (const auto& step : schedule->steps) {
    for (int ch = 0; ch < channels; ++ch) {
      for (const Position& p : step) order.push_back({p.row, p.col, ch});
    }
  }
  return order;
}

}  // namespace loclc
