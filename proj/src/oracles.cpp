// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

namespace vview::oracle {

namespace {

struct Uv {
  double u = 0.0;
  double v = 0.0;
  bool ok = false;
};

Uv project(const VirtualCamera& cam, const Eigen::Vector3d& p) {
  const Eigen::Vector3d pc = cam.extrinsics().rotation * p + cam.extrinsics().translation;
  Uv out;
  if (const auto* pin = std::get_if<Pinhole>(&cam.projection())) {
    if (pc.z() <= 0.0) return out;
    out.u = pin->cx + pin->fx * (pc.x() / pc.z());
    out.v = pin->cy + pin->fy * (pc.y() / pc.z());
  } else {
    if (pc.z() < 0.0) return out;
    const auto& o = std::get<Orthographic>(cam.projection());
    out.u = o.cx + o.scale * pc.x();
    out.v = o.cy + o.scale * pc.y();
  }
  const long px = std::lround(out.u);
  const long py = std::lround(out.v);
  out.ok = px >= 0 && px < cam.width() && py >= 0 && py < cam.height();
  return out;
}

// Sum of the four corner taps weighted by their area coefficients, with
// clamped indices.
template <typename Fetch>
double bilinear(int w, int h, double u, double v, Fetch&& fetch) {
  const int x0 = static_cast<int>(std::floor(u));
  const int y0 = static_cast<int>(std::floor(v));
  const double ax = u - x0;
  const double ay = v - y0;
  double sum = 0.0;
  for (int dy = 0; dy <= 1; ++dy) {
    for (int dx = 0; dx <= 1; ++dx) {
      const double weight = (dx ? ax : 1.0 - ax) * (dy ? ay : 1.0 - ay);
      const int x = std::min(std::max(x0 + dx, 0), w - 1);
      const int y = std::min(std::max(y0 + dy, 0), h - 1);
      sum += weight * fetch(x, y);
    }
  }
  return sum;
}

}  // namespace

std::vector<double> score_points(std::span<const Eigen::Vector3d> candidates, std::span<const Heatmap> heatmaps,
                                 std::span<const VirtualCamera> cameras) {
  std::vector<double> scores;
  for (const auto& p : candidates) {
    std::vector<double> samples;
    for (std::size_t i = 0; i < cameras.size(); ++i) {
      const Uv uv = project(cameras[i], p);
      if (!uv.ok) continue;
      const Heatmap& map = heatmaps[i];
      samples.push_back(bilinear(map.width, map.height, uv.u, uv.v,
                                 [&](int x, int y) { return static_cast<double>(map.values[y * map.width + x]); }));
    }
    if (samples.empty()) {
      scores.push_back(-std::numeric_limits<double>::infinity());
      continue;
    }
    double total = 0.0;
    for (double s : samples) total += s;
    scores.push_back(total / static_cast<double>(samples.size()));
  }
  return scores;
}

std::vector<double> pool_local_feature(const Eigen::Vector3d& location, const FeatureMapStack& stack) {
  std::vector<double> out;
  for (std::size_t i = 0; i < stack.grids.size(); ++i) {
    const auto& grid = stack.grids[i];
    const auto& cam = stack.cameras[i];
    const Uv uv = project(cam, location);
    for (int k = 0; k < grid.dim; ++k) {
      if (!uv.ok) {
        out.push_back(0.0);
        continue;
      }
      // Pixel centers map to cell centers.
      const double gu = (uv.u + 0.5) / cam.width() * grid.cols - 0.5;
      const double gv = (uv.v + 0.5) / cam.height() * grid.rows - 0.5;
      out.push_back(bilinear(grid.cols, grid.rows, gu, gv, [&](int c, int r) {
        return static_cast<double>(grid.values[(static_cast<std::size_t>(r) * grid.cols + c) * grid.dim + k]);
      }));
    }
  }
  return out;
}

FineGrid convex_upsample(const CoarseFeatureGrid& grid, const ConvexWeights& weights, int factor) {
  FineGrid fine(grid.rows * factor, grid.cols * factor, grid.channels);
  for (int y = 0; y < fine.rows; ++y) {
    for (int x = 0; x < fine.cols; ++x) {
      for (int c = 0; c < grid.channels; ++c) {
        double acc = 0.0;
        int k = 0;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx, ++k) {
            int r = y / factor + dy;
            int q = x / factor + dx;
            r = r < 0 ? 0 : (r >= grid.rows ? grid.rows - 1 : r);
            q = q < 0 ? 0 : (q >= grid.cols ? grid.cols - 1 : q);
            acc += weights.at(y, x, k) * grid.at(r, q, c);
          }
        }
        fine.at(y, x, c) = acc;
      }
    }
  }
  return fine;
}

std::vector<double> softmax9(const std::vector<double>& raw) {
  std::vector<double> out(raw.size());
  for (std::size_t p = 0; p + 9 <= raw.size(); p += 9) {
    const double peak = *std::max_element(raw.begin() + static_cast<std::ptrdiff_t>(p),
                                          raw.begin() + static_cast<std::ptrdiff_t>(p + 9));
    double z = 0.0;
    for (std::size_t k = 0; k < 9; ++k) z += std::exp(raw[p + k] - peak);
    for (std::size_t k = 0; k < 9; ++k) out[p + k] = std::exp(raw[p + k] - peak) / z;
  }
  return out;
}

}  // namespace vview::oracle
