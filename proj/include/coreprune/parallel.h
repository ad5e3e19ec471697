// Copyright 2026 The coreprune Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COREPRUNE_PARALLEL_H_
#define COREPRUNE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace coreprune {

// Worker count: COREPRUNE_THREADS when set to a positive integer, else the
// hardware concurrency. Read on every call.
std::size_t ThreadCount();

// Runs body(begin, end) over contiguous chunks of [0, n) on up to
// ThreadCount() threads. Chunk boundaries depend only on n and the worker
// count. Exceptions from a chunk are rethrown on the calling thread.
void ParallelFor(std::size_t n,
                 const std::function<void(std::size_t, std::size_t)>& body,
                 std::size_t min_chunk = 1024);

}  // namespace coreprune

#endif  // COREPRUNE_PARALLEL_H_
