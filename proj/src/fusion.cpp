// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/fusion.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vview {

Heatmap::Heatmap(int w, int h, int id) : width(w), height(h), view_id(id) {
  if (w <= 0 || h <= 0) throw std::invalid_argument(fmt::format("bad heatmap size {}x{}", w, h));
  values.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0f);
}

void Heatmap::validate() const {
  if (values.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("heatmap buffer does not match its size");
  }
  for (float v : values) {
    if (!std::isfinite(v) || v < 0.0f) {
      throw std::invalid_argument(fmt::format("heatmap {} holds invalid score {}", view_id, v));
    }
  }
}

FeatureGrid::FeatureGrid(int r, int c, int d) : rows(r), cols(c), dim(d) {
  if (r <= 0 || c <= 0 || d <= 0) {
    throw std::invalid_argument(fmt::format("bad feature grid dims {}x{}x{}", r, c, d));
  }
  values.assign(static_cast<std::size_t>(r) * c * d, 0.0f);
}

void FeatureMapStack::validate() const {
  if (grids.size() != cameras.size()) {
    throw std::invalid_argument(
        fmt::format("feature stack has {} grids but {} cameras", grids.size(), cameras.size()));
  }
  for (const auto& g : grids) {
    if (g.rows != grids.front().rows || g.cols != grids.front().cols || g.dim != grids.front().dim) {
      throw std::invalid_argument("feature grids must share dimensions");
    }
  }
}

namespace {

// Bilinear sample of a row-major single-channel image with edge clamping.
template <typename At>
double bilinear(int w, int h, double u, double v, At&& at) {
  const double fx = std::floor(u);
  const double fy = std::floor(v);
  const double tx = u - fx;
  const double ty = v - fy;
  const auto clampi = [](double c, int n) {
    return static_cast<int>(std::clamp(c, 0.0, static_cast<double>(n - 1)));
  };
  const int x0 = clampi(fx, w);
  const int x1 = clampi(fx + 1.0, w);
  const int y0 = clampi(fy, h);
  const int y1 = clampi(fy + 1.0, h);
  const double top = (1.0 - tx) * at(x0, y0) + tx * at(x1, y0);
  const double bottom = (1.0 - tx) * at(x0, y1) + tx * at(x1, y1);
  return (1.0 - ty) * top + ty * bottom;
}

}  // namespace

double bilinear_sample(const Heatmap& map, double u, double v) {
  return bilinear(map.width, map.height, u, v,
                  [&](int x, int y) { return static_cast<double>(map.at(x, y)); });
}

std::optional<Eigen::Vector2d> project_into_view(const VirtualCamera& camera, const Eigen::Vector3d& p) {
  const ImagePoint ip = camera.project(p);
  if (!ip.in_front) return std::nullopt;
  const double rx = std::round(ip.u);
  const double ry = std::round(ip.v);
  if (!(rx >= 0.0 && rx < camera.width() && ry >= 0.0 && ry < camera.height())) return std::nullopt;
  return Eigen::Vector2d(ip.u, ip.v);
}

ScoredCloud score_points(std::span<const Eigen::Vector3d> candidates, std::span<const Heatmap> heatmaps,
                         std::span<const VirtualCamera> cameras) {
  if (heatmaps.size() != cameras.size()) {
    throw std::invalid_argument(
        fmt::format("score_points: {} heatmaps for {} cameras", heatmaps.size(), cameras.size()));
  }
  if (candidates.empty()) throw std::invalid_argument("score_points: no candidates");
  for (std::size_t i = 0; i < heatmaps.size(); ++i) {
    if (heatmaps[i].width != cameras[i].width() || heatmaps[i].height != cameras[i].height()) {
      throw std::invalid_argument(fmt::format("score_points: heatmap {} is {}x{}, camera is {}x{}", i,
                                              heatmaps[i].width, heatmaps[i].height, cameras[i].width(),
                                              cameras[i].height()));
    }
  }

  ScoredCloud out;
  out.points.assign(candidates.begin(), candidates.end());
  out.scores.assign(candidates.size(), -std::numeric_limits<double>::infinity());
  out.views_hit.assign(candidates.size(), 0);
  for (std::size_t m = 0; m < candidates.size(); ++m) {
    double sum = 0.0;
    int hits = 0;
    for (std::size_t i = 0; i < cameras.size(); ++i) {
      const auto uv = project_into_view(cameras[i], candidates[m]);
      if (!uv) continue;
      sum += bilinear_sample(heatmaps[i], uv->x(), uv->y());
      ++hits;
    }
    out.views_hit[m] = hits;
    if (hits > 0) out.scores[m] = sum / hits;
  }
  return out;
}

ScoredCloud score_points(std::span<const Eigen::Vector3d> candidates, std::span<const Heatmap> heatmaps,
                         const CameraRig& rig) {
  return score_points(candidates, heatmaps, std::span<const VirtualCamera>(rig.cameras()));
}

ArgmaxResult argmax_point(const ScoredCloud& scored) {
  std::optional<std::size_t> best;
  for (std::size_t m = 0; m < scored.scores.size(); ++m) {
    if (scored.views_hit[m] < 1) continue;
    if (!best || scored.scores[m] > scored.scores[*best]) best = m;
  }
  if (!best) throw std::invalid_argument("argmax_point: no candidate is visible in any view");
  return {*best, scored.points[*best], scored.scores[*best]};
}

std::vector<float> pool_local_feature(const Eigen::Vector3d& location, const FeatureMapStack& stack) {
  stack.validate();
  const auto D = static_cast<std::size_t>(stack.dim());
  std::vector<float> out(D * stack.grids.size(), 0.0f);
  bool seen = false;
  for (std::size_t i = 0; i < stack.grids.size(); ++i) {
    const auto& cam = stack.cameras[i];
    const auto uv = project_into_view(cam, location);
    if (!uv) continue;
    seen = true;
    const auto& grid = stack.grids[i];
    // Align pixel centers with grid-cell centers.
    const double gu = (uv->x() + 0.5) * grid.cols / cam.width() - 0.5;
    const double gv = (uv->y() + 0.5) * grid.rows / cam.height() - 0.5;
    for (std::size_t k = 0; k < D; ++k) {
      const double value = bilinear(grid.cols, grid.rows, gu, gv, [&](int c, int r) {
        return static_cast<double>(grid.at(r, c, static_cast<int>(k)));
      });
      out[i * D + k] = static_cast<float>(value);
    }
  }
  if (!seen) throw std::invalid_argument("pool_local_feature: location is outside every view");
  return out;
}

std::vector<Eigen::Vector3d> candidate_grid(const WorkspaceCube& cube, int resolution) {
  if (resolution < 1) {
    throw std::invalid_argument(fmt::format("candidate grid resolution must be >= 1, got {}", resolution));
  }
  const double step = cube.side / resolution;
  const Eigen::Vector3d lo = cube.lo();
  std::vector<Eigen::Vector3d> out;
  out.reserve(static_cast<std::size_t>(resolution) * resolution * resolution);
  for (int k = 0; k < resolution; ++k) {
    for (int j = 0; j < resolution; ++j) {
      for (int i = 0; i < resolution; ++i) {
        out.emplace_back(lo.x() + (i + 0.5) * step, lo.y() + (j + 0.5) * step, lo.z() + (k + 0.5) * step);
      }
    }
  }
  return out;
}

}  // namespace vview
