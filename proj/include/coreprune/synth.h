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

#ifndef COREPRUNE_SYNTH_H_
#define COREPRUNE_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "coreprune/core.h"

namespace coreprune {

enum class SynthKind { kGaussianClusters, kConstant, kGradient, kChecker };

std::string_view SynthKindName(SynthKind kind);
std::optional<SynthKind> ParseSynthKind(std::string_view name);

struct SynthSpec {
  SynthKind kind = SynthKind::kGaussianClusters;
  std::size_t width = 14;
  std::size_t height = 14;
  std::size_t frames = 1;
  std::size_t dim = 16;
  std::size_t n_clusters = 4;   // gaussian_clusters only
  double cluster_std = 0.1;     // gaussian_clusters only; 0 gives exact copies
  double constant_value = 1.0;  // constant only
  std::uint64_t seed = 0;
};

// Deterministic fixture grids, all drawn from Rng(spec.seed):
//   gaussian_clusters  n_clusters centers ~ N(0, I_D); each token belongs to
//                      the cluster of its spatial block (a near-square
//                      gx x gy tiling of the frame) and equals
//                      center + cluster_std * N(0, I_D)
//   constant           every entry equals constant_value
//   gradient           every entry of token (x, y) equals x / W + y / H
//                      (1-based positions)
//   checker            two N(0, I_D) prototypes alternating with the parity
//                      of row + column
TokenGrid Generate(const SynthSpec& spec);

// Cluster id of a within-frame position for gaussian_clusters.
std::size_t ClusterOf(const SynthSpec& spec, std::size_t row, std::size_t col);

}  // namespace coreprune

#endif  // COREPRUNE_SYNTH_H_
