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

#ifndef COREPRUNE_RANDOM_H_
#define COREPRUNE_RANDOM_H_

#include <cstdint>
#include <random>

namespace coreprune {

// Seeded generator with a pinned output sequence. The engine is
// std::mt19937_64, whose output is fixed by the C++ standard; the
// distribution mappings below are written out explicitly because the
// standard library's distributions differ between implementations.
//
//   UniformDouble:  (next() >> 11) * 2^-53, in [0, 1)
//   Below(n):       Lemire multiply-shift with rejection, unbiased
//   Normal:         Box-Muller on 1 - UniformDouble() and UniformDouble(),
//                   cosine branch only (one engine pair per sample)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  double UniformDouble();
  std::uint64_t Below(std::uint64_t n);
  double Normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace coreprune

#endif  // COREPRUNE_RANDOM_H_
