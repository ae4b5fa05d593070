// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

namespace vview {

/// rows x cols x channels grid, row-major with channels innermost. Used both
/// for token-resolution inputs and for the upsampled output.
struct CoarseFeatureGrid {
  int rows = 0;
  int cols = 0;
  int channels = 0;
  std::vector<double> values;

  CoarseFeatureGrid() = default;
  CoarseFeatureGrid(int r, int c, int ch);

  double at(int r, int c, int k) const {
    return values[(static_cast<std::size_t>(r) * cols + c) * channels + k];
  }
  double& at(int r, int c, int k) { return values[(static_cast<std::size_t>(r) * cols + c) * channels + k]; }
};

using FineGrid = CoarseFeatureGrid;

inline constexpr int kNeighbors = 9;
inline constexpr double kConvexTolerance = 1e-6;
inline constexpr int kDefaultUpsampleFactor = 14;

/// Offset of neighbor k in the 3x3 stencil: k = (dy + 1) * 3 + (dx + 1).
inline constexpr int neighbor_dy(int k) { return k / 3 - 1; }
inline constexpr int neighbor_dx(int k) { return k % 3 - 1; }

/// Nine weights per fine pixel, row-major over fine pixels.
struct ConvexWeights {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;

  ConvexWeights() = default;
  ConvexWeights(int r, int c);

  double at(int y, int x, int k) const {
    return values[(static_cast<std::size_t>(y) * cols + x) * kNeighbors + k];
  }
  double& at(int y, int x, int k) { return values[(static_cast<std::size_t>(y) * cols + x) * kNeighbors + k]; }

  /// Throws unless every pixel's weights are >= 0 and sum to 1 within
  /// kConvexTolerance.
  void validate() const;
};

/// fine[y, x, c] = sum_k w[y, x, k] * grid[y / s + dy_k, x / s + dx_k, c],
/// clamping neighbors at the grid border. Computed relative to the parent
/// cell, so constant fields and one-hot center weights come back exactly.
/// Allocates nothing besides the output.
FineGrid convex_upsample(const CoarseFeatureGrid& grid, const ConvexWeights& weights, int factor);

/// Per-pixel softmax over the nine raw scores. `raw` holds rows * cols * 9
/// values in ConvexWeights layout.
ConvexWeights normalize_to_convex(int rows, int cols, const std::vector<double>& raw);

}  // namespace vview
