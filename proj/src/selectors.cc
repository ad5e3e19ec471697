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

#include "coreprune/selectors.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "coreprune/error.h"
#include "coreprune/random.h"

namespace coreprune {

namespace {

constexpr Method kAllMethods[] = {Method::kRandom, Method::kKCenter,
                                  Method::kEvtp, Method::kDivMax,
                                  Method::kOracle};

// Smallest index i with eligible[i] whose value is within the tie band of
// the eligible maximum.
std::size_t TieAwareArgmax(std::span<const double> values,
                           const std::vector<bool>& taken) {
  double best = -1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!taken[i] && values[i] > best) best = values[i];
  }
  const double floor = best - best * kRelativeTieTolerance;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!taken[i] && values[i] >= floor) return i;
  }
  Fail(ErrorKind::kInvariant, "argmax over an empty candidate set");
}

GreedyTrace Traverse(const Matrix& points, std::size_t k, std::size_t first,
                     double first_distance) {
  const std::size_t m = points.rows();
  GreedyTrace trace;
  trace.pick_order.reserve(k);
  trace.pick_distances.reserve(k);

  std::vector<bool> taken(m, false);
  std::vector<double> min_sq(m, std::numeric_limits<double>::infinity());

  std::size_t pick = first;
  double pick_distance = first_distance;
  while (true) {
    taken[pick] = true;
    trace.pick_order.push_back(pick);
    trace.pick_distances.push_back(pick_distance);
    if (trace.pick_order.size() == k) break;

    const auto center = points.row(pick);
    for (std::size_t i = 0; i < m; ++i) {
      if (taken[i]) continue;
      const double d = SquaredDistance(points.row(i), center);
      if (d < min_sq[i]) min_sq[i] = d;
    }
    pick = TieAwareArgmax(min_sq, taken);
    pick_distance = std::sqrt(min_sq[pick]);
  }
  return trace;
}

void CheckK(std::size_t k, std::size_t m) {
  if (k == 0 || k > m) {
    Fail(ErrorKind::kInvalidArgument,
         "k = " + std::to_string(k) + " must lie in [1, " +
             std::to_string(m) + "]");
  }
}

std::vector<double> ColumnMean(const Matrix& points) {
  std::vector<double> mean(points.cols(), 0.0);
  for (std::size_t r = 0; r < points.rows(); ++r) {
    for (std::size_t c = 0; c < points.cols(); ++c) mean[c] += points(r, c);
  }
  for (double& v : mean) v /= static_cast<double>(points.rows());
  return mean;
}

Selection Finish(Method method, const PruneConfig& cfg, std::size_t k,
                 GreedyTrace trace) {
  Selection sel;
  sel.method = method;
  sel.k = k;
  sel.config = cfg;
  sel.pick_order = std::move(trace.pick_order);
  sel.pick_distances = std::move(trace.pick_distances);
  sel.indices = sel.pick_order;
  std::sort(sel.indices.begin(), sel.indices.end());
  return sel;
}

}  // namespace

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kRandom:
      return "random";
    case Method::kKCenter:
      return "kcenter";
    case Method::kEvtp:
      return "evtp";
    case Method::kDivMax:
      return "divmax";
    case Method::kOracle:
      return "oracle";
  }
  return "unknown";
}

std::optional<Method> ParseMethod(std::string_view name) {
  for (Method m : kAllMethods) {
    if (MethodName(m) == name) return m;
  }
  return std::nullopt;
}

std::string KnownMethods() {
  std::string out;
  for (Method m : kAllMethods) {
    if (!out.empty()) out += ", ";
    out += MethodName(m);
  }
  return out;
}

GreedyTrace FarthestFirst(const Matrix& points, std::size_t k,
                          std::span<const double> anchor) {
  CheckK(k, points.rows());
  if (anchor.size() != points.cols()) {
    Fail(ErrorKind::kInvalidArgument, "anchor dimension mismatch");
  }
  std::vector<double> to_anchor(points.rows());
  for (std::size_t i = 0; i < points.rows(); ++i) {
    to_anchor[i] = SquaredDistance(points.row(i), anchor);
  }
  const std::vector<bool> none(points.rows(), false);
  const std::size_t first = TieAwareArgmax(to_anchor, none);
  return Traverse(points, k, first, std::sqrt(to_anchor[first]));
}

GreedyTrace FarthestFirstFrom(const Matrix& points, std::size_t k,
                              std::size_t first) {
  CheckK(k, points.rows());
  if (first >= points.rows()) {
    Fail(ErrorKind::kInvalidArgument, "seed index out of range");
  }
  return Traverse(points, k, first, 0.0);
}

Selection SelectEvtp(const TokenGrid& grid, const PruneConfig& cfg) {
  cfg.Validate(grid.size());
  const std::size_t k = cfg.EffectiveK(grid.size());
  const AugmentedTokens aug = Augment(grid, cfg.epsilon);
  return Finish(Method::kEvtp, cfg, k,
                FarthestFirst(aug.vectors, k, aug.mean_vector));
}

Selection SelectKCenter(const TokenGrid& grid, const PruneConfig& cfg) {
  cfg.Validate(grid.size());
  const std::size_t k = cfg.EffectiveK(grid.size());
  const Matrix features = NormalizeFeatures(grid, cfg.epsilon).embeddings();
  return Finish(Method::kKCenter, cfg, k,
                FarthestFirst(features, k, ColumnMean(features)));
}

Selection SelectRandom(const TokenGrid& grid, const PruneConfig& cfg) {
  cfg.Validate(grid.size());
  const std::size_t m = grid.size();
  const std::size_t k = cfg.EffectiveK(m);
  std::vector<std::size_t> pool(m);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  Rng rng(cfg.seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.Below(m - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return Finish(Method::kRandom, cfg, k, GreedyTrace{std::move(pool), {}});
}

Selection SelectDivMax(const TokenGrid& grid, const PruneConfig& cfg) {
  cfg.Validate(grid.size());
  const std::size_t k = cfg.EffectiveK(grid.size());
  const Matrix features = NormalizeFeatures(grid, cfg.epsilon).embeddings();
  const std::size_t m = features.rows();

  std::size_t first = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double d = SquaredDistance(features.row(i), features.row(j));
      if (d > best) {
        best = d;
        first = i;
      }
    }
  }
  GreedyTrace trace = FarthestFirstFrom(features, k, first);
  trace.pick_distances[0] = std::sqrt(std::max(best, 0.0));
  return Finish(Method::kDivMax, cfg, k, std::move(trace));
}

Selection SelectOracle(const TokenGrid& grid, const PruneConfig& cfg) {
  cfg.Validate(grid.size());
  const std::size_t k = cfg.EffectiveK(grid.size());
  const Matrix features = NormalizeFeatures(grid, cfg.epsilon).embeddings();
  OracleResult best = OracleOptimalRadius(features, k);
  return Finish(Method::kOracle, cfg, k,
                GreedyTrace{std::move(best.witness), {}});
}

Selection Select(Method method, const TokenGrid& grid,
                 const PruneConfig& cfg) {
  switch (method) {
    case Method::kRandom:
      return SelectRandom(grid, cfg);
    case Method::kKCenter:
      return SelectKCenter(grid, cfg);
    case Method::kEvtp:
      return SelectEvtp(grid, cfg);
    case Method::kDivMax:
      return SelectDivMax(grid, cfg);
    case Method::kOracle:
      return SelectOracle(grid, cfg);
  }
  Fail(ErrorKind::kInvalidArgument, "unknown method");
}

OracleResult OracleOptimalRadius(const Matrix& points, std::size_t k) {
  const std::size_t m = points.rows();
  if (m > kOracleMaxPoints || k > kOracleMaxK) {
    Fail(ErrorKind::kLimit,
         "oracle limited to M <= " + std::to_string(kOracleMaxPoints) +
             " and k <= " + std::to_string(kOracleMaxK) + " (got M = " +
             std::to_string(m) + ", k = " + std::to_string(k) + ")");
  }
  CheckK(k, m);

  std::vector<std::size_t> subset(k);
  std::iota(subset.begin(), subset.end(), std::size_t{0});
  OracleResult result;
  double best_sq = std::numeric_limits<double>::infinity();
  while (true) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m && worst < best_sq; ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t c : subset) {
        nearest = std::min(nearest, SquaredDistance(points.row(i),
                                                    points.row(c)));
      }
      worst = std::max(worst, nearest);
    }
    if (worst < best_sq) {
      best_sq = worst;
      result.witness = subset;
    }
    // Next combination in lexicographic order.
    std::size_t pos = k;
    while (pos > 0 && subset[pos - 1] == m - k + pos - 1) --pos;
    if (pos == 0) break;
    ++subset[pos - 1];
    for (std::size_t j = pos; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  result.radius = std::sqrt(best_sq);
  return result;
}

}  // namespace coreprune
