// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vview/geom.hpp"

#include <cstdint>
#include <vector>

namespace vview {

/// Uniform random points inside `cube` with uniform [0, 1) features.
PointCloud random_cloud(std::size_t count, const WorkspaceCube& cube, std::uint64_t seed, int channels = 3);

/// Like random_cloud but with coordinates snapped to a lattice of `cells`
/// steps per side, so many points share pixels and exact depths.
PointCloud lattice_cloud(std::size_t count, const WorkspaceCube& cube, int cells, std::uint64_t seed,
                         int channels = 3);

/// Table-top style demo scene: a colored ground plane and three boxes.
PointCloud demo_scene(const WorkspaceCube& cube, std::size_t points_per_surface, std::uint64_t seed);

/// The first `count` views of front, top, right, left, back.
std::vector<ViewName> canonical_views(int count);

}  // namespace vview
