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

#ifndef COREPRUNE_SELECTORS_H_
#define COREPRUNE_SELECTORS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coreprune/core.h"
#include "coreprune/matrix.h"

namespace coreprune {

enum class Method { kRandom, kKCenter, kEvtp, kDivMax, kOracle };

std::string_view MethodName(Method method);
std::optional<Method> ParseMethod(std::string_view name);
// "random, kcenter, evtp, divmax, oracle"
std::string KnownMethods();

struct Selection {
  std::vector<std::size_t> indices;  // strictly increasing
  Method method = Method::kEvtp;
  std::size_t k = 0;
  PruneConfig config;
  std::vector<std::size_t> pick_order;  // acquisition order
  // Distance of each pick to the already-selected set at the time it was
  // added. The first entry is the distance that seeded the run (to the
  // anchor point, or the farthest-pair distance for divmax). Empty for
  // selectors that are not greedy.
  std::vector<double> pick_distances;

  bool operator==(const Selection& other) const {
    return indices == other.indices && method == other.method &&
           k == other.k && pick_order == other.pick_order;
  }
};

struct GreedyTrace {
  std::vector<std::size_t> pick_order;
  std::vector<double> pick_distances;
};

// Squared distances within this relative band of the maximum count as tied;
// the smallest index among tied candidates wins. The band makes the
// selection invariant under uniform rescaling of the points.
inline constexpr double kRelativeTieTolerance = 1e-9;

// Farthest-first traversal. The first pick is the point farthest from
// `anchor`; each later pick maximizes its minimum distance to the picks so
// far. Maintains one min-distance array, so the cost is O(k * M * dim).
GreedyTrace FarthestFirst(const Matrix& points, std::size_t k,
                          std::span<const double> anchor);

// Same traversal seeded with a fixed first pick.
GreedyTrace FarthestFirstFrom(const Matrix& points, std::size_t k,
                              std::size_t first);

// Greedy k-center on the augmented joint space (features plus
// lambda-weighted grid coordinates), initialized at the token farthest from
// the augmented mean.
Selection SelectEvtp(const TokenGrid& grid, const PruneConfig& cfg);

// Greedy k-center on normalized features only.
Selection SelectKCenter(const TokenGrid& grid, const PruneConfig& cfg);

// Uniform sample of k indices without replacement (partial Fisher-Yates on
// Rng(cfg.seed)).
Selection SelectRandom(const TokenGrid& grid, const PruneConfig& cfg);

// Max-min diversity baseline on normalized features: starts from the
// smaller index of the farthest pair, then the same greedy step as
// SelectKCenter.
Selection SelectDivMax(const TokenGrid& grid, const PruneConfig& cfg);

// Exhaustive optimum on normalized features; subject to the oracle limits.
Selection SelectOracle(const TokenGrid& grid, const PruneConfig& cfg);

Selection Select(Method method, const TokenGrid& grid, const PruneConfig& cfg);

inline constexpr std::size_t kOracleMaxPoints = 20;
inline constexpr std::size_t kOracleMaxK = 6;

struct OracleResult {
  double radius = 0.0;
  std::vector<std::size_t> witness;  // lexicographically smallest optimum
};

// Minimum k-center radius by enumerating all C(M, k) subsets. Refuses with
// ErrorKind::kLimit when M > 20 or k > 6.
OracleResult OracleOptimalRadius(const Matrix& points, std::size_t k);

}  // namespace coreprune

#endif  // COREPRUNE_SELECTORS_H_
