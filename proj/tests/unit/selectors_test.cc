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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "coreprune/error.h"
#include "coreprune/metrics.h"
#include "coreprune/synth.h"
#include "oracles/brute_force.h"

namespace coreprune {
namespace {

TokenGrid Line(std::vector<double> values) {
  const std::size_t m = values.size();
  return TokenGrid(Matrix(m, 1, std::move(values)), m, 1);
}

TokenGrid Corners() {
  return TokenGrid(Matrix(4, 2, {0, 0, 1, 0, 0, 1, 1, 1}), 2, 2);
}

PruneConfig Ratio(double r) {
  PruneConfig cfg;
  cfg.ratio = r;
  return cfg;
}

PruneConfig K(std::size_t k) {
  PruneConfig cfg;
  cfg.k_override = k;
  return cfg;
}

Matrix ToMatrix(const oracle::Points& pts) {
  Matrix m(pts.size(), pts[0].size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::copy(pts[i].begin(), pts[i].end(), m.row(i).begin());
  }
  return m;
}

oracle::Points ToPoints(const Matrix& m) {
  oracle::Points pts(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    pts[i].assign(m.row(i).begin(), m.row(i).end());
  }
  return pts;
}

void CheckSelectionShape(const Selection& sel, std::size_t m) {
  CHECK(sel.indices.size() == sel.k);
  CHECK(std::is_sorted(sel.indices.begin(), sel.indices.end()));
  CHECK(std::adjacent_find(sel.indices.begin(), sel.indices.end()) ==
        sel.indices.end());
  for (std::size_t i : sel.indices) CHECK(i < m);
  std::vector<std::size_t> order = sel.pick_order;
  std::sort(order.begin(), order.end());
  CHECK(order == sel.indices);
}

TEST_CASE("full ratio keeps every token for every selector") {
  const TokenGrid grid = Generate({.width = 5, .height = 4, .dim = 3,
                                   .seed = 9});
  std::vector<std::size_t> all(grid.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  for (Method m : {Method::kRandom, Method::kKCenter, Method::kEvtp,
                   Method::kDivMax}) {
    const Selection sel = Select(m, grid, Ratio(1.0));
    CHECK(sel.indices == all);
    CheckSelectionShape(sel, grid.size());
  }
}

TEST_CASE("evtp on unit-square corners picks a diagonal pair") {
  const TokenGrid grid = Corners();
  const Selection sel = SelectEvtp(grid, K(2));
  CHECK(sel.pick_order == std::vector<std::size_t>{0, 3});

  const AugmentedTokens aug = Augment(grid);
  const double radius = JointCoverageRadius(aug, sel);
  // Side length in the joint space: token 0 to token 1.
  const double side =
      std::sqrt(std::pow(aug.vectors(1, 0) - aug.vectors(0, 0), 2) +
                std::pow(aug.vectors(1, 2) - aug.vectors(0, 2), 2));
  CHECK(radius == doctest::Approx(side).epsilon(1e-15));
  CHECK(radius == doctest::Approx(4.001936671883783).epsilon(1e-12));
  const OracleResult best = OracleOptimalRadius(aug.vectors, 2);
  CHECK(radius <= 2.0 * best.radius);
  CHECK(radius == doctest::Approx(best.radius).epsilon(1e-15));
}

TEST_CASE("tiny ratio clamps k to one, the token farthest from the mean") {
  const TokenGrid grid = Line({0, 1, 2, 3, 4, 5, 6, 7, 8, 30});
  const Selection sel = SelectEvtp(grid, Ratio(0.05));
  CHECK(sel.k == 1);
  CHECK(sel.indices == std::vector<std::size_t>{9});
}

TEST_CASE("kcenter on constant features falls back to smallest indices") {
  const TokenGrid grid(Matrix(6, 2, 1.0), 3, 2);
  const Selection sel = SelectKCenter(grid, K(3));
  CHECK(sel.indices == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("kcenter on {0, 0.1, 10}") {
  const TokenGrid grid = Line({0.0, 0.1, 10.0});
  const Selection sel = SelectKCenter(grid, K(2));
  CHECK(sel.pick_order == std::vector<std::size_t>{2, 0});
  CHECK(FeatureCoverageRadius(grid, sel, FeatureSpace::kRaw) ==
        doctest::Approx(0.1).epsilon(1e-15));
  // Normalized: 0.1 / (Var + eps), computed independently.
  CHECK(FeatureCoverageRadius(grid, sel) ==
        doctest::Approx(0.004544995248434719).epsilon(1e-12));
  CHECK(FeatureCoverageRadius(grid, SelectKCenter(grid, K(3))) == 0.0);
}

TEST_CASE("random selector is seeded and exhaustive at k = M") {
  const TokenGrid grid = Generate({.width = 10, .height = 10, .dim = 2});
  PruneConfig cfg = K(20);
  cfg.seed = 7;
  const Selection a = SelectRandom(grid, cfg);
  const Selection b = SelectRandom(grid, cfg);
  CHECK(a == b);
  CheckSelectionShape(a, grid.size());
  cfg.seed = 8;
  CHECK_FALSE(SelectRandom(grid, cfg) == a);

  const TokenGrid four(Matrix(4, 1, 0.0), 2, 2);
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    PruneConfig c = K(4);
    c.seed = seed;
    CHECK(SelectRandom(four, c).indices ==
          std::vector<std::size_t>{0, 1, 2, 3});
  }
}

TEST_CASE("random selector is close to uniform") {
  const TokenGrid grid(Matrix(10, 1, 0.0), 10, 1);
  std::vector<int> hits(10, 0);
  for (std::uint64_t seed = 0; seed < 4000; ++seed) {
    PruneConfig cfg = K(3);
    cfg.seed = seed;
    for (std::size_t i : SelectRandom(grid, cfg).indices) ++hits[i];
  }
  // Expected 1200 each; 6 sigma is about 175.
  for (int h : hits) CHECK(std::abs(h - 1200) < 175);
}

TEST_CASE("divmax starts from the farthest pair") {
  CHECK(SelectDivMax(Line({0.0, 5.0, 10.0}), K(2)).indices ==
        std::vector<std::size_t>{0, 2});
  CHECK(SelectDivMax(TokenGrid(Matrix(4, 3, 2.0), 2, 2), K(2)).indices ==
        std::vector<std::size_t>{0, 1});
  const TokenGrid grid = Line({3.0, 1.0, 4.0});
  CHECK(SelectDivMax(grid, K(3)).indices ==
        std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("k above M is rejected") {
  const TokenGrid grid = Line({1.0, 2.0});
  for (Method m : {Method::kRandom, Method::kKCenter, Method::kEvtp,
                   Method::kDivMax}) {
    CHECK_THROWS_AS(Select(m, grid, K(3)), Error);
  }
}

TEST_CASE("oracle examples") {
  const OracleResult all = OracleOptimalRadius(Matrix(3, 1, {0, 1, 2}), 3);
  CHECK(all.radius == 0.0);

  const OracleResult corners =
      OracleOptimalRadius(Matrix(4, 2, {0, 0, 1, 0, 0, 1, 1, 1}), 2);
  CHECK(corners.radius == 1.0);
  CHECK(corners.witness == std::vector<std::size_t>{0, 1});

  const OracleResult line = OracleOptimalRadius(Matrix(3, 1, {0, 1, 2}), 1);
  CHECK(line.radius == 1.0);
  CHECK(line.witness == std::vector<std::size_t>{1});
}

TEST_CASE("oracle refuses oversized instances") {
  CHECK_THROWS_AS(OracleOptimalRadius(Matrix(21, 1), 2), Error);
  try {
    OracleOptimalRadius(Matrix(10, 1), 7);
    FAIL("expected a limit error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kLimit);
  }
}

TEST_CASE("oracle agrees with an independent bitmask enumeration") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 3 + rng() % 9;
    const std::size_t k = 1 + rng() % std::min<std::size_t>(m, 4);
    const oracle::Points pts = oracle::RandomPoints(rng, m, 1 + rng() % 3);
    const OracleResult r = OracleOptimalRadius(ToMatrix(pts), k);
    CHECK(r.radius == doctest::Approx(oracle::OptimalRadius(pts, k))
                          .epsilon(1e-14));
    CHECK(oracle::Radius(pts, r.witness) ==
          doctest::Approx(r.radius).epsilon(1e-14));
  }
}

TEST_CASE("greedy is a 2-approximation on random instances") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t w = 2 + rng() % 3, h = 2 + rng() % 2;
    const std::size_t k = 1 + rng() % 4;
    const oracle::Points pts = oracle::RandomPoints(rng, w * h, 1 + rng() % 4);
    const TokenGrid grid(ToMatrix(pts), w, h);

    const Selection kc = SelectKCenter(grid, K(k));
    const Matrix features = NormalizeFeatures(grid).embeddings();
    CHECK(FeatureCoverageRadius(grid, kc) <=
          2.0 * oracle::OptimalRadius(ToPoints(features), k) + 1e-12);

    const Selection ev = SelectEvtp(grid, K(k));
    const AugmentedTokens aug = Augment(grid);
    CHECK(JointCoverageRadius(aug, ev) <=
          2.0 * oracle::OptimalRadius(ToPoints(aug.vectors), k) + 1e-12);
  }
}

TEST_CASE("pick distances are non-increasing after the first pick") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TokenGrid grid = Generate({.width = 9, .height = 9, .dim = 6,
                                     .n_clusters = 5, .cluster_std = 0.3,
                                     .seed = seed});
    for (Method m : {Method::kKCenter, Method::kEvtp, Method::kDivMax}) {
      const Selection sel = Select(m, grid, Ratio(0.3));
      REQUIRE(sel.pick_distances.size() == sel.k);
      for (std::size_t i = 2; i < sel.pick_distances.size(); ++i) {
        CHECK(sel.pick_distances[i] <= sel.pick_distances[i - 1] + 1e-12);
      }
    }
  }
}

TEST_CASE("greedy selections are nested across ratios") {
  const TokenGrid grid = Generate({.width = 12, .height = 12, .dim = 4,
                                   .seed = 5});
  for (Method m : {Method::kKCenter, Method::kEvtp}) {
    const Selection small = Select(m, grid, Ratio(0.1));
    const Selection large = Select(m, grid, Ratio(0.3));
    CHECK(std::equal(small.pick_order.begin(), small.pick_order.end(),
                     large.pick_order.begin()));
    if (m == Method::kKCenter) {
      CHECK(FeatureCoverageRadius(grid, large) <=
            FeatureCoverageRadius(grid, small));
    } else {
      const AugmentedTokens aug = Augment(grid);
      CHECK(JointCoverageRadius(aug, large) <=
            JointCoverageRadius(aug, small));
    }
  }
}

TEST_CASE("greedy selectors ignore the seed") {
  const TokenGrid grid = Generate({.width = 8, .height = 8, .dim = 5,
                                   .seed = 3});
  for (Method m : {Method::kKCenter, Method::kEvtp, Method::kDivMax}) {
    PruneConfig a = Ratio(0.25), b = Ratio(0.25);
    a.seed = 1;
    b.seed = 12345;
    CHECK(Select(m, grid, a) == Select(m, grid, b));
  }
}

TEST_CASE("constant features reduce evtp to spatial farthest-first") {
  for (std::size_t w : {3u, 7u, 14u}) {
    for (std::size_t h : {2u, 5u, 14u}) {
      const TokenGrid grid(Matrix(w * h, 4, 0.3), w, h);
      const std::size_t k = std::max<std::size_t>(1, w * h / 5);
      const Selection ev = SelectEvtp(grid, K(k));
      const Matrix coords = SpatialCoordinates(grid);
      std::vector<double> mean(2, 0.0);
      for (std::size_t i = 0; i < coords.rows(); ++i) {
        mean[0] += coords(i, 0) / static_cast<double>(coords.rows());
        mean[1] += coords(i, 1) / static_cast<double>(coords.rows());
      }
      CHECK(FarthestFirst(coords, k, mean).pick_order == ev.pick_order);
    }
  }
}

TEST_CASE("permuting tokens permutes the selection") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 30;
    const oracle::Points pts = oracle::RandomPoints(rng, m, 3);
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    oracle::Points shuffled(m);
    for (std::size_t i = 0; i < m; ++i) shuffled[i] = pts[perm[i]];

    // A 1 x M strip has distinct coordinates, so the feature-only selector
    // is the one whose output must commute with the permutation.
    const TokenGrid a(ToMatrix(pts), m, 1);
    const TokenGrid b(ToMatrix(shuffled), m, 1);
    const Selection sa = SelectKCenter(a, K(6));
    const Selection sb = SelectKCenter(b, K(6));
    std::vector<std::size_t> mapped;
    for (std::size_t i : sb.pick_order) mapped.push_back(perm[i]);
    CHECK(mapped == sa.pick_order);
  }
}

}  // namespace
}  // namespace coreprune
