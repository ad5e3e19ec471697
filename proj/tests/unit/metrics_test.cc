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

#include "coreprune/metrics.h"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "coreprune/error.h"
#include "coreprune/synth.h"
#include "oracles/brute_force.h"

namespace coreprune {
namespace {

Selection Of(std::vector<std::size_t> indices) {
  Selection sel;
  std::sort(indices.begin(), indices.end());
  sel.indices = indices;
  sel.pick_order = indices;
  sel.k = indices.size();
  return sel;
}

TokenGrid Line(std::vector<double> values) {
  const std::size_t m = values.size();
  return TokenGrid(Matrix(m, 1, std::move(values)), m, 1);
}

TEST_CASE("selecting everything gives zero radii") {
  const TokenGrid grid = Generate({.width = 4, .height = 3, .dim = 5});
  std::vector<std::size_t> all(grid.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const CoverageReport r = Coverage(grid, Of(all), std::vector<double>{0.0});
  CHECK(r.feature_radius == 0.0);
  CHECK(r.joint_radius == 0.0);
  CHECK(r.spatial_radius == 0.0);
  CHECK(r.epsilon_ball_fractions[0].covered_fraction == 1.0);
}

TEST_CASE("feature radius on {0, 1, 2} with the middle selected") {
  const TokenGrid grid = Line({0.0, 1.0, 2.0});
  CHECK(FeatureCoverageRadius(grid, Of({1})) ==
        doctest::Approx(1.499997750003375).epsilon(1e-13));
  CHECK(FeatureCoverageRadius(grid, Of({1}), FeatureSpace::kRaw) == 1.0);
}

TEST_CASE("duplicates of a selected token contribute zero") {
  const TokenGrid grid = Line({4.0, 4.0, 4.0, 9.0});
  CHECK(FeatureCoverageRadius(grid, Of({0, 3})) == 0.0);
}

TEST_CASE("empty or out-of-range selections are errors") {
  const TokenGrid grid = Line({1.0, 2.0});
  CHECK_THROWS_AS(FeatureCoverageRadius(grid, Of({})), Error);
  CHECK_THROWS_AS(SpatialCoverageRadius(grid, Of({5})), Error);
  CHECK_THROWS_AS(JointCoverageRadius(Augment(grid), Of({})), Error);
}

TEST_CASE("joint radius on a constant 2x2 grid") {
  const TokenGrid grid(Matrix(4, 2, 5.0), 2, 2);
  const AugmentedTokens aug = Augment(grid);
  // Index 0 sits at (0.5, 0.5); the farthest token is (1, 1).
  CHECK(JointCoverageRadius(aug, Of({0})) ==
        doctest::Approx(1e-6 * std::sqrt(0.5)).epsilon(1e-12));
  // Feature block is zero, so R_j equals lambda * R_s.
  CHECK(JointCoverageRadius(aug, Of({0})) ==
        doctest::Approx(aug.lambda * SpatialCoverageRadius(grid, Of({0})))
            .epsilon(1e-12));
}

TEST_CASE("spatial radius on a 3x1 line") {
  const TokenGrid grid(Matrix(3, 1, {0.0, 7.0, -2.0}), 3, 1);
  CHECK(SpatialCoverageRadius(grid, Of({1})) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("clustered selection covers space worse than evtp") {
  const TokenGrid grid(Matrix(14 * 14, 3, 0.0), 14, 14);
  PruneConfig cfg;
  cfg.ratio = 0.1;
  const Selection ev = SelectEvtp(grid, cfg);
  std::vector<std::size_t> first(ev.k);
  std::iota(first.begin(), first.end(), std::size_t{0});
  const double clustered = SpatialCoverageRadius(grid, Of(first));
  const double spread = SpatialCoverageRadius(grid, ev);
  CHECK(clustered > spread);
  // 19 row-major tokens fill row one and five cells of row two; the
  // bottom-right token is 13/14 below its nearest center (independent
  // coordinate computation).
  CHECK(clustered == doctest::Approx(13.0 / 14.0).epsilon(1e-12));
}

TEST_CASE("epsilon-ball coverage") {
  const TokenGrid grid = Line({0.0, 1.0, 2.0});
  const std::vector<double> eps = {0.0, 1.0, 1.5, 10.0};
  const auto f = EpsilonBallCoverage(grid, Of({1}), eps);
  CHECK(f[0].covered_fraction == doctest::Approx(1.0 / 3.0));
  CHECK(f[1].covered_fraction == doctest::Approx(1.0 / 3.0));
  CHECK(f[2].covered_fraction == 1.0);
  CHECK(f[3].covered_fraction == 1.0);
  CHECK_THROWS_AS(
      EpsilonBallCoverage(grid, Of({1}), std::vector<double>{-0.1}), Error);
}

TEST_CASE("epsilon-ball fraction at zero equals k / M without duplicates") {
  const TokenGrid grid = Generate({.width = 6, .height = 6, .dim = 4,
                                   .cluster_std = 0.5, .seed = 4});
  PruneConfig cfg;
  cfg.ratio = 0.25;
  const Selection sel = SelectKCenter(grid, cfg);
  const double r = FeatureCoverageRadius(grid, sel);
  const std::vector<double> eps = {0.0, r, r * 0.5, r * 2.0};
  const auto f = EpsilonBallCoverage(grid, sel, eps);
  CHECK(f[0].covered_fraction == doctest::Approx(9.0 / 36.0));
  CHECK(f[1].covered_fraction == 1.0);
  CHECK(f[2].covered_fraction <= f[1].covered_fraction);
  CHECK(f[3].covered_fraction == 1.0);
}

TEST_CASE("adding an index never increases a radius") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const TokenGrid grid = Generate({.width = 6, .height = 5, .dim = 3,
                                     .cluster_std = 0.4, .seed = rng()});
    std::vector<std::size_t> idx(grid.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::size_t k = 1 + rng() % 10;
    const Selection before = Of({idx.begin(), idx.begin() + k});
    const Selection after = Of({idx.begin(), idx.begin() + k + 1});
    const CoverageReport a = Coverage(grid, before, {});
    const CoverageReport b = Coverage(grid, after, {});
    CHECK(b.feature_radius <= a.feature_radius);
    CHECK(b.joint_radius <= a.joint_radius);
    CHECK(b.spatial_radius <= a.spatial_radius);
  }
}

TEST_CASE("joint radius dominates each block's own radius") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TokenGrid grid = Generate({.width = 7, .height = 7, .dim = 4,
                                     .cluster_std = 0.2, .seed = seed});
    PruneConfig cfg;
    cfg.ratio = 0.1;
    const Selection sel = SelectEvtp(grid, cfg);
    const AugmentedTokens aug = Augment(grid);
    const double joint = JointCoverageRadius(aug, sel);
    const Matrix features = aug.vectors.columns(0, aug.feature_dim());
    const Matrix coords = aug.vectors.columns(aug.feature_dim(), 2);
    CHECK(joint >= CoverageRadius(features, sel.indices));
    CHECK(joint >= CoverageRadius(coords, sel.indices));
  }
}

TEST_CASE("radii match the brute-force reference") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const oracle::Points pts = oracle::RandomPoints(rng, 12, 3);
    Matrix m(12, 3);
    for (std::size_t i = 0; i < 12; ++i) {
      std::copy(pts[i].begin(), pts[i].end(), m.row(i).begin());
    }
    const std::vector<std::size_t> sel = {rng() % 4, 4 + rng() % 4};
    CHECK(CoverageRadius(m, sel) ==
          doctest::Approx(oracle::Radius(pts, sel)).epsilon(1e-14));
  }
}

TEST_CASE("oracle witness radius equals the reported optimum exactly") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const TokenGrid grid = Generate({.width = 4, .height = 3, .dim = 2,
                                     .n_clusters = 3, .cluster_std = 0.7,
                                     .seed = rng()});
    PruneConfig cfg;
    cfg.k_override = 1 + rng() % 4;
    const Selection sel = SelectOracle(grid, cfg);
    const Matrix features = NormalizeFeatures(grid).embeddings();
    CHECK(FeatureCoverageRadius(grid, sel) ==
          OracleOptimalRadius(features, sel.k).radius);
  }
}

TEST_CASE("radii ignore the order of non-selected tokens") {
  std::mt19937_64 rng(12);
  const oracle::Points pts = oracle::RandomPoints(rng, 10, 2);
  Matrix a(10, 2), b(10, 2);
  // Keep tokens 0 and 1 in place; reverse the rest.
  for (std::size_t i = 0; i < 10; ++i) {
    const std::size_t j = i < 2 ? i : 11 - i;
    std::copy(pts[i].begin(), pts[i].end(), a.row(i).begin());
    std::copy(pts[j].begin(), pts[j].end(), b.row(i).begin());
  }
  const std::vector<std::size_t> sel = {0, 1};
  CHECK(CoverageRadius(a, sel) == CoverageRadius(b, sel));
}

}  // namespace
}  // namespace coreprune
