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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coreprune/error.h"
#include "coreprune/parallel.h"

namespace coreprune {

namespace {

void CheckCenters(const Matrix& points, std::span<const std::size_t> centers) {
  if (centers.empty()) {
    Fail(ErrorKind::kInvalidArgument, "selection is empty");
  }
  for (std::size_t c : centers) {
    if (c >= points.rows()) {
      Fail(ErrorKind::kInvalidArgument,
           "selected index " + std::to_string(c) + " out of range for " +
               std::to_string(points.rows()) + " tokens");
    }
  }
}

Matrix FeaturesFor(const TokenGrid& grid, const Selection& sel,
                   FeatureSpace space) {
  if (space == FeatureSpace::kRaw) return grid.embeddings();
  return NormalizeFeatures(grid, sel.config.epsilon).embeddings();
}

}  // namespace

std::vector<double> NearestCenterDistances(
    const Matrix& points, std::span<const std::size_t> centers) {
  CheckCenters(points, centers);
  std::vector<double> out(points.rows());
  ParallelFor(points.rows(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t c : centers) {
        nearest = std::min(nearest,
                           SquaredDistance(points.row(i), points.row(c)));
      }
      out[i] = std::sqrt(nearest);
    }
  });
  return out;
}

double CoverageRadius(const Matrix& points,
                      std::span<const std::size_t> centers) {
  const std::vector<double> dist = NearestCenterDistances(points, centers);
  return *std::max_element(dist.begin(), dist.end());
}

double FeatureCoverageRadius(const TokenGrid& grid, const Selection& sel,
                             FeatureSpace space) {
  return CoverageRadius(FeaturesFor(grid, sel, space), sel.indices);
}

double JointCoverageRadius(const AugmentedTokens& aug, const Selection& sel) {
  return CoverageRadius(aug.vectors, sel.indices);
}

double SpatialCoverageRadius(const TokenGrid& grid, const Selection& sel) {
  return CoverageRadius(SpatialCoordinates(grid), sel.indices);
}

std::vector<EpsilonBallFraction> EpsilonBallCoverage(
    const TokenGrid& grid, const Selection& sel,
    std::span<const double> epsilons, FeatureSpace space) {
  for (double eps : epsilons) {
    if (!(eps >= 0.0)) {
      Fail(ErrorKind::kInvalidArgument, "epsilon-ball radius must be >= 0");
    }
  }
  std::vector<double> dist =
      NearestCenterDistances(FeaturesFor(grid, sel, space), sel.indices);
  std::sort(dist.begin(), dist.end());
  const double n = static_cast<double>(dist.size());
  std::vector<EpsilonBallFraction> out;
  out.reserve(epsilons.size());
  for (double eps : epsilons) {
    const auto covered = std::upper_bound(dist.begin(), dist.end(), eps) -
                         dist.begin();
    out.push_back({eps, static_cast<double>(covered) / n});
  }
  return out;
}

CoverageReport Coverage(const TokenGrid& grid, const Selection& sel,
                        std::span<const double> epsilons, FeatureSpace space) {
  CoverageReport report;
  report.feature_radius = FeatureCoverageRadius(grid, sel, space);
  report.joint_radius =
      JointCoverageRadius(Augment(grid, sel.config.epsilon), sel);
  report.spatial_radius = SpatialCoverageRadius(grid, sel);
  report.epsilon_ball_fractions =
      EpsilonBallCoverage(grid, sel, epsilons, space);
  return report;
}

}  // namespace coreprune
