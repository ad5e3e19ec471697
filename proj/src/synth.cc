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

#include "coreprune/synth.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "coreprune/error.h"
#include "coreprune/random.h"

namespace coreprune {

std::string_view SynthKindName(SynthKind kind) {
  switch (kind) {
    case SynthKind::kGaussianClusters:
      return "gaussian_clusters";
    case SynthKind::kConstant:
      return "constant";
    case SynthKind::kGradient:
      return "gradient";
    case SynthKind::kChecker:
      return "checker";
  }
  return "unknown";
}

std::optional<SynthKind> ParseSynthKind(std::string_view name) {
  for (SynthKind k : {SynthKind::kGaussianClusters, SynthKind::kConstant,
                      SynthKind::kGradient, SynthKind::kChecker}) {
    if (SynthKindName(k) == name) return k;
  }
  return std::nullopt;
}

std::size_t ClusterOf(const SynthSpec& spec, std::size_t row,
                      std::size_t col) {
  const std::size_t n = spec.n_clusters;
  const auto gx = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(n))));
  const std::size_t gy = (n + gx - 1) / gx;
  if (spec.width >= gx && spec.height >= gy) {
    const std::size_t bx = col * gx / spec.width;
    const std::size_t by = row * gy / spec.height;
    // Blocks beyond n (when gx * gy > n) fold into the last cluster.
    return std::min(by * gx + bx, n - 1);
  }
  // Frame too small for a 2-D tiling: contiguous row-major runs.
  const std::size_t p = row * spec.width + col;
  return p * n / (spec.width * spec.height);
}

TokenGrid Generate(const SynthSpec& spec) {
  if (spec.width == 0 || spec.height == 0 || spec.frames == 0 ||
      spec.dim == 0) {
    Fail(ErrorKind::kInvalidArgument, "synth dimensions must be positive");
  }
  const std::size_t per_frame = spec.width * spec.height;
  const std::size_t m = per_frame * spec.frames;
  const std::size_t d = spec.dim;
  Matrix e(m, d);
  Rng rng(spec.seed);

  switch (spec.kind) {
    case SynthKind::kGaussianClusters: {
      if (spec.n_clusters == 0 || spec.n_clusters > per_frame) {
        Fail(ErrorKind::kInvalidArgument,
             "n_clusters must lie in [1, W*H = " + std::to_string(per_frame) +
                 "]");
      }
      if (!(spec.cluster_std >= 0.0)) {
        Fail(ErrorKind::kInvalidArgument, "cluster_std must be >= 0");
      }
      Matrix centers(spec.n_clusters, d);
      for (double& v : centers.data()) v = rng.Normal();
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t within = i % per_frame;
        const auto c = centers.row(
            ClusterOf(spec, within / spec.width, within % spec.width));
        auto row = e.row(i);
        for (std::size_t j = 0; j < d; ++j) {
          row[j] = c[j] + spec.cluster_std * rng.Normal();
        }
      }
      break;
    }
    case SynthKind::kConstant:
      for (double& v : e.data()) v = spec.constant_value;
      break;
    case SynthKind::kGradient:
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t within = i % per_frame;
        const double value =
            static_cast<double>(within % spec.width + 1) /
                static_cast<double>(spec.width) +
            static_cast<double>(within / spec.width + 1) /
                static_cast<double>(spec.height);
        for (double& v : e.row(i)) v = value;
      }
      break;
    case SynthKind::kChecker: {
      Matrix proto(2, d);
      for (double& v : proto.data()) v = rng.Normal();
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t within = i % per_frame;
        const std::size_t parity =
            (within / spec.width + within % spec.width) % 2;
        const auto src = proto.row(parity);
        std::copy(src.begin(), src.end(), e.row(i).begin());
      }
      break;
    }
  }
  return TokenGrid(std::move(e), spec.width, spec.height, spec.frames);
}

}  // namespace coreprune
