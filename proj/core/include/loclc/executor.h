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

#ifndef LOCLC_EXECUTOR_H_
#define LOCLC_EXECUTOR_H_

// Fork-join helper over a fixed-size TBB arena. Work items must write to
// disjoint outputs; results then do not depend on the worker count.

#include <cstddef>
#include <memory>

#include <tbb/blocked_range.h>
#include <tbb/global_control.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

namespace loclc {

// 0 means "all hardware threads".
int ResolveThreads(int requested);

class Executor {
 public:
  explicit Executor(int threads = 0);

  int concurrency() const { return threads_; }

  template <typename Fn>
  void ParallelFor(size_t n, Fn&& fn) const {
    if (n == 0) return;
    if (threads_ == 1 || n == 1) {
      for (size_t i = 0; i < n; ++i) fn(i);
      return;
    }
    arena_->execute([&] {
      tbb::parallel_for(tbb::blocked_range<size_t>(0, n),
                        [&](const tbb::blocked_range<size_t>& r) {
                          for (size_t i = r.begin(); i != r.end(); ++i) fn(i);
                        });
    });
  }

 private:
  int threads_;
  // Lifts TBB's process-wide worker cap when more threads than cores are
  // requested.
  std::unique_ptr<tbb::global_control> limit_;
  std::unique_ptr<tbb::task_arena> arena_;
};

}  // namespace loclc

#endif  // LOCLC_EXECUTOR_H_
