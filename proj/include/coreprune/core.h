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

#ifndef COREPRUNE_CORE_H_
#define COREPRUNE_CORE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "coreprune/matrix.h"

namespace coreprune {

inline constexpr double kDefaultEpsilon = 1e-6;

// Position of a token inside the (frame, row, column) grid. Zero-based.
struct GridPosition {
  std::size_t frame;
  std::size_t row;
  std::size_t col;
};

// M visual token embeddings laid out as F frames of H rows by W columns,
// row-major within a frame and frames concatenated. Construction validates
// the geometry and rejects non-finite entries.
class TokenGrid {
 public:
  TokenGrid(Matrix embeddings, std::size_t width, std::size_t height,
            std::size_t frames = 1);

  const Matrix& embeddings() const { return embeddings_; }
  std::size_t size() const { return embeddings_.rows(); }
  std::size_t dim() const { return embeddings_.cols(); }
  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t frames() const { return frames_; }

  GridPosition position(std::size_t index) const;

  // (x / W, y / H) with 1-based column x and row y, so both lie in (0, 1].
  // Frames share the same per-frame coordinates.
  std::pair<double, double> normalized_coords(std::size_t index) const;

  // Same geometry, new embeddings (must have M rows).
  TokenGrid with_embeddings(Matrix embeddings) const;

 private:
  Matrix embeddings_;
  std::size_t width_;
  std::size_t height_;
  std::size_t frames_;
};

// Normalized features with lambda-scaled coordinates appended.
struct AugmentedTokens {
  Matrix vectors;  // M x (D + 2)
  double lambda = 0.0;
  double epsilon = kDefaultEpsilon;
  std::vector<double> mean_vector;  // length D + 2

  std::size_t feature_dim() const { return vectors.cols() - 2; }
};

struct PruneConfig {
  double ratio = 1.0;
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 0;
  std::optional<std::size_t> k_override;

  // Throws kInvalidArgument on a ratio outside (0, 1], a non-positive
  // epsilon, or k > num_tokens.
  void Validate(std::size_t num_tokens) const;

  // k_override if set, else max(1, floor(ratio * M)).
  std::size_t EffectiveK(std::size_t num_tokens) const;
};

// Population variance over all M x D entries around the scalar mean.
double TotalVariance(const TokenGrid& grid);

// (E - mu) / (Var(E) + epsilon), mu the per-dimension mean and Var(E) the
// scalar total variance. Divides by the variance, not the standard
// deviation.
TokenGrid NormalizeFeatures(const TokenGrid& grid,
                            double epsilon = kDefaultEpsilon);

// Per-token (x / W, y / H) as an M x 2 matrix.
Matrix SpatialCoordinates(const TokenGrid& grid);

// Builds [normalized features, lambda * coords] with
// lambda = TotalVariance(raw grid) + epsilon.
AugmentedTokens Augment(const TokenGrid& grid,
                        double epsilon = kDefaultEpsilon);

}  // namespace coreprune

#endif  // COREPRUNE_CORE_H_
