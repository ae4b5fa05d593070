// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Scalar reference implementations used by the verification suite and the
// tests. They follow the textbook formulas directly and share no code with
// the library paths they check.

#include "vview/fusion.hpp"
#include "vview/geom.hpp"
#include "vview/upsample.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace vview::oracle {

/// Mean over seeing views of the bilinear heatmap sample at the projection.
/// Unseen candidates get -inf.
std::vector<double> score_points(std::span<const Eigen::Vector3d> candidates, std::span<const Heatmap> heatmaps,
                                 std::span<const VirtualCamera> cameras);

std::vector<double> pool_local_feature(const Eigen::Vector3d& location, const FeatureMapStack& stack);

/// Triple loop over fine pixels, stencil taps and channels.
FineGrid convex_upsample(const CoarseFeatureGrid& grid, const ConvexWeights& weights, int factor);

/// Textbook softmax over each group of nine.
std::vector<double> softmax9(const std::vector<double>& raw);

}  // namespace vview::oracle
