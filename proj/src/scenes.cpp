// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/scenes.hpp"

#include <fmt/format.h>

#include <array>
#include <random>
#include <stdexcept>

namespace vview {

PointCloud random_cloud(std::size_t count, const WorkspaceCube& cube, std::uint64_t seed, int channels) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Eigen::Vector3d lo = cube.lo();
  std::vector<Eigen::Vector3f> pos(count);
  std::vector<float> feat(count * static_cast<std::size_t>(channels));
  for (std::size_t n = 0; n < count; ++n) {
    for (int i = 0; i < 3; ++i) pos[n][i] = static_cast<float>(lo[i] + cube.side * unit(rng));
    for (int c = 0; c < channels; ++c) feat[n * channels + c] = static_cast<float>(unit(rng));
  }
  return PointCloud(std::move(pos), std::move(feat), channels);
}

PointCloud lattice_cloud(std::size_t count, const WorkspaceCube& cube, int cells, std::uint64_t seed,
                         int channels) {
  if (cells < 1) throw std::invalid_argument("lattice needs at least one cell");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cell(0, cells);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Eigen::Vector3d lo = cube.lo();
  std::vector<Eigen::Vector3f> pos(count);
  std::vector<float> feat(count * static_cast<std::size_t>(channels));
  for (std::size_t n = 0; n < count; ++n) {
    for (int i = 0; i < 3; ++i) pos[n][i] = static_cast<float>(lo[i] + cube.side * cell(rng) / cells);
    for (int c = 0; c < channels; ++c) feat[n * channels + c] = static_cast<float>(unit(rng));
  }
  return PointCloud(std::move(pos), std::move(feat), channels);
}

PointCloud demo_scene(const WorkspaceCube& cube, std::size_t points_per_surface, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Eigen::Vector3f> pos;
  std::vector<float> feat;
  const Eigen::Vector3d c = cube.center;
  const double s = cube.side;
  auto add = [&](const Eigen::Vector3d& p, const std::array<float, 3>& rgb) {
    pos.push_back(p.cast<float>());
    feat.insert(feat.end(), rgb.begin(), rgb.end());
  };

  // Table surface a little above the bottom of the workspace.
  const double table_z = c.z() - 0.3 * s;
  for (std::size_t n = 0; n < points_per_surface; ++n) {
    const double x = c.x() + (unit(rng) - 0.5) * 0.9 * s;
    const double y = c.y() + (unit(rng) - 0.5) * 0.9 * s;
    const bool dark = (static_cast<int>((x - c.x()) * 10.0 / s + 10) + static_cast<int>((y - c.y()) * 10.0 / s + 10)) % 2;
    const float shade = dark ? 0.45f : 0.6f;
    add({x, y, table_z}, {shade, shade * 0.8f, shade * 0.6f});
  }

  struct Box {
    Eigen::Vector3d center;
    Eigen::Vector3d half;
    std::array<float, 3> rgb;
  };
  const std::array<Box, 3> boxes{{
      {{c.x() + 0.1 * s, c.y() + 0.2 * s, table_z + 0.1 * s}, {0.08 * s, 0.08 * s, 0.1 * s}, {0.85f, 0.1f, 0.1f}},
      {{c.x() - 0.2 * s, c.y() - 0.1 * s, table_z + 0.05 * s}, {0.12 * s, 0.06 * s, 0.05 * s}, {0.1f, 0.7f, 0.2f}},
      {{c.x() + 0.25 * s, c.y() - 0.25 * s, table_z + 0.15 * s}, {0.05 * s, 0.05 * s, 0.15 * s}, {0.15f, 0.3f, 0.9f}},
  }};
  for (const auto& box : boxes) {
    for (std::size_t n = 0; n < points_per_surface / 4; ++n) {
      // Pick a face, then a point on it.
      const int axis = static_cast<int>(unit(rng) * 3.0) % 3;
      const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
      Eigen::Vector3d p;
      for (int i = 0; i < 3; ++i) p[i] = box.center[i] + (2.0 * unit(rng) - 1.0) * box.half[i];
      p[axis] = box.center[axis] + sign * box.half[axis];
      add(p, box.rgb);
    }
  }
  return PointCloud(std::move(pos), std::move(feat), 3);
}

std::vector<ViewName> canonical_views(int count) {
  static constexpr std::array<ViewName, 5> kOrder{ViewName::Front, ViewName::Top, ViewName::Right, ViewName::Left,
                                                  ViewName::Back};
  if (count < 1 || count > 5) throw std::invalid_argument(fmt::format("view count must be 1..5, got {}", count));
  return {kOrder.begin(), kOrder.begin() + count};
}

}  // namespace vview
