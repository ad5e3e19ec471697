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

#include "coreprune/core.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "coreprune/error.h"

namespace coreprune {

TokenGrid::TokenGrid(Matrix embeddings, std::size_t width, std::size_t height,
                     std::size_t frames)
    : embeddings_(std::move(embeddings)),
      width_(width),
      height_(height),
      frames_(frames) {
  if (width_ == 0 || height_ == 0 || frames_ == 0) {
    Fail(ErrorKind::kInvalidArgument, "grid dimensions must be positive");
  }
  if (embeddings_.cols() == 0) {
    Fail(ErrorKind::kInvalidArgument, "embedding dimension must be positive");
  }
  if (embeddings_.rows() != width_ * height_ * frames_) {
    Fail(ErrorKind::kInvalidArgument,
         "token count " + std::to_string(embeddings_.rows()) +
             " does not equal F*W*H = " +
             std::to_string(width_ * height_ * frames_));
  }
  for (double v : embeddings_.data()) {
    if (!std::isfinite(v)) {
      Fail(ErrorKind::kInvalidArgument, "embedding contains non-finite value");
    }
  }
}

GridPosition TokenGrid::position(std::size_t index) const {
  const std::size_t per_frame = width_ * height_;
  const std::size_t within = index % per_frame;
  return {index / per_frame, within / width_, within % width_};
}

std::pair<double, double> TokenGrid::normalized_coords(
    std::size_t index) const {
  const GridPosition p = position(index);
  return {static_cast<double>(p.col + 1) / static_cast<double>(width_),
          static_cast<double>(p.row + 1) / static_cast<double>(height_)};
}

TokenGrid TokenGrid::with_embeddings(Matrix embeddings) const {
  return TokenGrid(std::move(embeddings), width_, height_, frames_);
}

void PruneConfig::Validate(std::size_t num_tokens) const {
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    Fail(ErrorKind::kInvalidArgument, "ratio must lie in (0, 1]");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    Fail(ErrorKind::kInvalidArgument, "epsilon must be positive");
  }
  if (k_override && *k_override == 0) {
    Fail(ErrorKind::kInvalidArgument, "k_override must be positive");
  }
  if (EffectiveK(num_tokens) > num_tokens) {
    Fail(ErrorKind::kInvalidArgument,
         "k = " + std::to_string(EffectiveK(num_tokens)) +
             " exceeds token count " + std::to_string(num_tokens));
  }
}

std::size_t PruneConfig::EffectiveK(std::size_t num_tokens) const {
  if (k_override) return *k_override;
  const auto k = static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(num_tokens)));
  return k < 1 ? 1 : k;
}

double TotalVariance(const TokenGrid& grid) {
  // Shifting by the first entry keeps constant grids exactly at zero.
  const std::span<const double> values = grid.embeddings().data();
  const double shift = values[0];
  double sum = 0.0;
  for (double v : values) sum += v - shift;
  const double n = static_cast<double>(values.size());
  const double mean = sum / n;
  double sq = 0.0;
  for (double v : values) {
    const double dev = (v - shift) - mean;
    sq += dev * dev;
  }
  return sq / n;
}

namespace {

std::vector<double> ColumnMeans(const Matrix& m) {
  std::vector<double> shift(m.row(0).begin(), m.row(0).end());
  std::vector<double> sums(m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) sums[c] += m(r, c) - shift[c];
  }
  const double n = static_cast<double>(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) sums[c] = shift[c] + sums[c] / n;
  return sums;
}

}  // namespace

TokenGrid NormalizeFeatures(const TokenGrid& grid, double epsilon) {
  if (!(epsilon > 0.0)) {
    Fail(ErrorKind::kInvalidArgument, "epsilon must be positive");
  }
  const Matrix& e = grid.embeddings();
  const std::vector<double> mu = ColumnMeans(e);
  const double denom = TotalVariance(grid) + epsilon;
  Matrix out(e.rows(), e.cols());
  for (std::size_t r = 0; r < e.rows(); ++r) {
    for (std::size_t c = 0; c < e.cols(); ++c) {
      out(r, c) = (e(r, c) - mu[c]) / denom;
    }
  }
  return grid.with_embeddings(std::move(out));
}

Matrix SpatialCoordinates(const TokenGrid& grid) {
  Matrix out(grid.size(), 2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [x, y] = grid.normalized_coords(i);
    out(i, 0) = x;
    out(i, 1) = y;
  }
  return out;
}

AugmentedTokens Augment(const TokenGrid& grid, double epsilon) {
  const double lambda = TotalVariance(grid) + epsilon;
  const TokenGrid normalized = NormalizeFeatures(grid, epsilon);
  const Matrix& features = normalized.embeddings();
  const std::size_t m = grid.size();
  const std::size_t d = grid.dim();

  AugmentedTokens aug;
  aug.lambda = lambda;
  aug.epsilon = epsilon;
  aug.vectors = Matrix(m, d + 2);
  for (std::size_t i = 0; i < m; ++i) {
    auto row = aug.vectors.row(i);
    const auto src = features.row(i);
    std::copy(src.begin(), src.end(), row.begin());
    const auto [x, y] = grid.normalized_coords(i);
    row[d] = lambda * x;
    row[d + 1] = lambda * y;
  }
  aug.mean_vector = ColumnMeans(aug.vectors);
  return aug;
}

}  // namespace coreprune
