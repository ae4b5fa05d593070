// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vview/geom.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace vview {

/// Non-negative per-view score image, row-major (y * width + x).
struct Heatmap {
  int width = 0;
  int height = 0;
  std::vector<float> values;
  int view_id = 0;

  Heatmap() = default;
  Heatmap(int w, int h, int id = 0);

  float at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
  float& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }

  /// Throws if any value is negative or non-finite.
  void validate() const;
};

struct ScoredCloud {
  std::vector<Eigen::Vector3d> points;
  std::vector<double> scores;  // -inf for points seen by no view
  std::vector<int> views_hit;
};

/// h' x w' x D feature grid of one view, row-major with channels innermost.
struct FeatureGrid {
  int rows = 0;
  int cols = 0;
  int dim = 0;
  std::vector<float> values;

  FeatureGrid() = default;
  FeatureGrid(int r, int c, int d);

  float at(int r, int c, int k) const {
    return values[(static_cast<std::size_t>(r) * cols + c) * dim + k];
  }
  float& at(int r, int c, int k) { return values[(static_cast<std::size_t>(r) * cols + c) * dim + k]; }
};

/// Per-view feature grids plus the camera each view was rendered with.
struct FeatureMapStack {
  std::vector<FeatureGrid> grids;
  std::vector<VirtualCamera> cameras;

  /// Throws unless there is one camera per grid and all grids share dims.
  void validate() const;
  int dim() const { return grids.empty() ? 0 : grids.front().dim; }
};

/// Bilinear sample at continuous pixel coordinates (pixel centers at integer
/// positions), replicating the border.
double bilinear_sample(const Heatmap& map, double u, double v);

/// Continuous projection of `p` when it lands inside the camera image (same
/// rounding rule as the renderer), otherwise nullopt.
std::optional<Eigen::Vector2d> project_into_view(const VirtualCamera& camera, const Eigen::Vector3d& p);

/// Scores every candidate by the mean of its bilinear heatmap samples over the
/// views it projects into. heatmaps[i] pairs with rig camera i.
ScoredCloud score_points(std::span<const Eigen::Vector3d> candidates, std::span<const Heatmap> heatmaps,
                         const CameraRig& rig);
ScoredCloud score_points(std::span<const Eigen::Vector3d> candidates, std::span<const Heatmap> heatmaps,
                         std::span<const VirtualCamera> cameras);

struct ArgmaxResult {
  std::size_t index = 0;
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
  double score = 0.0;
};

/// Highest-scoring candidate; ties go to the lowest index. Throws when no
/// candidate is seen by any view.
ArgmaxResult argmax_point(const ScoredCloud& scored);

/// Concatenates, in view order, each view's bilinear feature sample at the
/// projection of `location`. Views that miss the location contribute zeros.
/// Throws when every view misses it.
std::vector<float> pool_local_feature(const Eigen::Vector3d& location, const FeatureMapStack& stack);

/// resolution^3 cell centers of a uniform subdivision of `cube`, x fastest.
std::vector<Eigen::Vector3d> candidate_grid(const WorkspaceCube& cube, int resolution);

}  // namespace vview
