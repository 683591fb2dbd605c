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

#include "loclc/executor.h"

#include <tbb/info.h>

#include "loclc/error.h"

namespace loclc {

int ResolveThreads(int requested) {
  if (requested < 0) {
    throw Error(ErrorCode::kInvalidArgument, "thread count must be >= 0");
  }
  if (requested > 0) return requested;
  const int hw = tbb::info::default_concurrency();
  return hw > 0 ? hw : 1;
}

Executor::Executor(int threads) : threads_(ResolveThreads(threads)) {
  if (threads_ <= 1) return;
  const size_t current = tbb::global_control::active_value(
      tbb::global_control::max_allowed_parallelism);
  if (static_cast<size_t>(threads_) > current) {
    limit_ = std::make_unique<tbb::global_control>(
        tbb::global_control::max_allowed_parallelism, threads_);
  }
  arena_ = std::make_unique<tbb::task_arena>(threads_);
}

}  // namespace loclc
