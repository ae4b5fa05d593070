// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

// Straight-line reference renderer. Nothing here shares code with the fast
// path apart from the camera projection kernel and splat_radius_px, which
// define the semantics both paths must agree on.

#include "vview/renderer.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace vview {

namespace {

struct Candidate {
  float depth;
  std::uint32_t index;
};

bool closer(const Candidate& a, const Candidate& b) {
  if (a.depth != b.depth) return a.depth < b.depth;
  return a.index < b.index;
}

}  // namespace

RenderedView render_view_oracle(const PointCloud& cloud, const VirtualCamera& camera,
                                const SplatConfig& cfg) {
  cfg.validate();
  const int w = camera.width();
  const int h = camera.height();

  // Bucket every in-frustum point by the pixel it lands on.
  std::vector<std::vector<Candidate>> buckets(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (std::size_t n = 0; n < cloud.size(); ++n) {
    const ImagePoint ip = camera.project(cloud.positions()[n].cast<double>());
    if (!ip.in_front) continue;
    const double px = std::round(ip.u);
    const double py = std::round(ip.v);
    if (px < 0.0 || px >= w || py < 0.0 || py >= h) continue;
    float d = static_cast<float>(ip.depth);
    if (!std::isfinite(d)) continue;
    if (d == 0.0f) d = 0.0f;  // fold -0
    const auto x = static_cast<std::size_t>(px);
    const auto y = static_cast<std::size_t>(py);
    buckets[y * static_cast<std::size_t>(w) + x].push_back({d, static_cast<std::uint32_t>(n)});
  }

  RenderedView view(camera, cloud.channels());
  for (std::size_t j = 0; j < buckets.size(); ++j) {
    const auto& bucket = buckets[j];
    if (bucket.empty()) continue;
    Candidate best = bucket.front();
    for (const Candidate& c : bucket) {
      if (closer(c, best)) best = c;
    }
    view.depth[j] = best.depth;
    view.hit_mask[j] = 1;
    view.point_index[j] = best.index;
    const auto f = cloud.feature(best.index);
    for (int c = 0; c < view.channels; ++c) {
      view.features[j * static_cast<std::size_t>(view.channels) + static_cast<std::size_t>(c)] =
          f[static_cast<std::size_t>(c)];
    }
  }
  return splat_oracle(view, cfg);
}

RenderedView splat_oracle(const RenderedView& view, const SplatConfig& cfg) {
  cfg.validate();
  RenderedView out = view;
  if (cfg.radius == 0.0) return out;
  const int w = view.width;
  const int h = view.height;
  const int reach = cfg.max_px;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t j = view.pixel(x, y);
      bool found = false;
      Candidate best{0.0f, 0};
      std::size_t best_k = 0;
      for (int dy = -reach; dy <= reach; ++dy) {
        for (int dx = -reach; dx <= reach; ++dx) {
          const int kx = x + dx;
          const int ky = y + dy;
          if (kx < 0 || kx >= w || ky < 0 || ky >= h) continue;
          const std::size_t k = view.pixel(kx, ky);
          if (!view.hit_mask[k]) continue;
          if (!(view.depth[k] < view.depth[j])) continue;
          const double rho = splat_radius_px(view.camera, cfg.radius, view.depth[k]);
          if (static_cast<double>(dx * dx + dy * dy) > rho * rho) continue;
          const Candidate c{view.depth[k], view.point_index[k]};
          if (!found || closer(c, best)) {
            best = c;
            best_k = k;
            found = true;
          }
        }
      }
      if (!found) continue;
      out.depth[j] = view.depth[best_k];
      out.hit_mask[j] = 1;
      out.point_index[j] = view.point_index[best_k];
      for (int c = 0; c < view.channels; ++c) {
        out.features[j * static_cast<std::size_t>(view.channels) + static_cast<std::size_t>(c)] =
            view.features[best_k * static_cast<std::size_t>(view.channels) + static_cast<std::size_t>(c)];
      }
    }
  }
  return out;
}

std::vector<RenderedView> render_oracle(const PointCloud& cloud, const CameraRig& rig,
                                        const SplatConfig& cfg) {
  std::vector<RenderedView> views;
  for (const auto& camera : rig.cameras()) views.push_back(render_view_oracle(cloud, camera, cfg));
  return views;
}

}  // namespace vview
