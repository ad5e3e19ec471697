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

#ifndef COREPRUNE_METRICS_H_
#define COREPRUNE_METRICS_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "coreprune/core.h"
#include "coreprune/matrix.h"
#include "coreprune/selectors.h"

namespace coreprune {

// Which embedding space R_f is measured in.
enum class FeatureSpace { kNormalized, kRaw };

// max_i min_{c in centers} ||p_i - p_c||. Throws on an empty center set or
// an out-of-range index. Parallel over query points when more than one
// worker is configured; the max reduction does not depend on the split.
double CoverageRadius(const Matrix& points, std::span<const std::size_t> centers);

// Distance from every point to its nearest center.
std::vector<double> NearestCenterDistances(
    const Matrix& points, std::span<const std::size_t> centers);

double FeatureCoverageRadius(const TokenGrid& grid, const Selection& sel,
                             FeatureSpace space = FeatureSpace::kNormalized);
double JointCoverageRadius(const AugmentedTokens& aug, const Selection& sel);
double SpatialCoverageRadius(const TokenGrid& grid, const Selection& sel);

struct EpsilonBallFraction {
  double epsilon;
  double covered_fraction;
};

// Fraction of tokens within feature distance epsilon of some selected token
// (inclusive), for each requested epsilon.
std::vector<EpsilonBallFraction> EpsilonBallCoverage(
    const TokenGrid& grid, const Selection& sel,
    std::span<const double> epsilons,
    FeatureSpace space = FeatureSpace::kNormalized);

struct CoverageReport {
  double feature_radius = 0.0;
  double joint_radius = 0.0;
  double spatial_radius = 0.0;
  std::vector<EpsilonBallFraction> epsilon_ball_fractions;
};

CoverageReport Coverage(const TokenGrid& grid, const Selection& sel,
                        std::span<const double> epsilons,
                        FeatureSpace space = FeatureSpace::kNormalized);

}  // namespace coreprune

#endif  // COREPRUNE_METRICS_H_
