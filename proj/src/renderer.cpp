// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/renderer.hpp"

#include "vview/parallel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace vview {

std::uint32_t depth_key(float depth) {
  if (!std::isfinite(depth) || depth < 0.0f) {
    throw std::invalid_argument(fmt::format("packed depth must be finite and >= 0, got {}", depth));
  }
  return depth == 0.0f ? 0u : std::bit_cast<std::uint32_t>(depth);
}

float depth_from_key(std::uint32_t key) { return std::bit_cast<float>(key); }

std::uint64_t pack_depth_index(float depth, std::uint64_t index) {
  const std::uint32_t key = depth_key(depth);
  if (index > 0xffffffffull) {
    throw std::invalid_argument(fmt::format("point index {} does not fit in 32 bits", index));
  }
  return (static_cast<std::uint64_t>(key) << 32) | index;
}

RenderedView::RenderedView(const VirtualCamera& cam, int c)
    : width(cam.width()), height(cam.height()), channels(c), camera(cam) {
  const auto pixels = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  features.assign(pixels * static_cast<std::size_t>(channels), 0.0f);
  depth.assign(pixels, std::numeric_limits<float>::infinity());
  hit_mask.assign(pixels, 0);
  point_index.assign(pixels, kNoPoint);
}

namespace {

template <typename T>
bool same_bytes(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() && (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0);
}

}  // namespace

bool bitwise_equal(const RenderedView& a, const RenderedView& b) {
  return a.width == b.width && a.height == b.height && a.channels == b.channels &&
         a.camera == b.camera && same_bytes(a.features, b.features) && same_bytes(a.depth, b.depth) &&
         same_bytes(a.hit_mask, b.hit_mask) && same_bytes(a.point_index, b.point_index);
}

void SplatConfig::validate() const {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument(fmt::format("splat radius must be finite and >= 0, got {}", radius));
  }
  if (max_px < 0) {
    throw std::invalid_argument(fmt::format("splat max_px must be >= 0, got {}", max_px));
  }
}

namespace {

void check_cloud_size(const PointCloud& cloud) {
  if (cloud.size() >= 0xffffffffull) {
    throw std::invalid_argument(fmt::format("point cloud too large to pack: {} points", cloud.size()));
  }
}

// Index of the pixel holding coordinate u in [0, size), or -1. Matches
// std::round (half away from zero) without the libm call: u - trunc(u) is
// exact, so the half comparison is too.
inline int round_to_pixel(double u, int size) {
  if (!(u > -0.5 && u < size - 0.5)) return -1;
  const int i = static_cast<int>(u);
  return i + (u - i >= 0.5 ? 1 : 0);
}

// Pixel and depth of a point, or false when it misses the image.
inline bool to_pixel(const VirtualCamera& camera, const Eigen::Vector3f& p, int& x, int& y, float& d) {
  const ImagePoint ip = camera.project(p.cast<double>());
  if (!ip.in_front) return false;
  x = round_to_pixel(ip.u, camera.width());
  y = round_to_pixel(ip.v, camera.height());
  if (x < 0 || y < 0) return false;
  d = static_cast<float>(ip.depth);
  return std::isfinite(d);
}

inline void atomic_min(std::uint64_t& slot, std::uint64_t value) {
  std::atomic_ref<std::uint64_t> ref(slot);
  std::uint64_t cur = ref.load(std::memory_order_relaxed);
  while (value < cur && !ref.compare_exchange_weak(cur, value, std::memory_order_relaxed)) {
  }
}

// Kernel 1: scatter packed depth-index values with a 64-bit minimum.
template <typename PointFn>
std::vector<std::uint64_t> scatter(std::size_t count, std::size_t pixels, int workers, PointFn&& point) {
  std::vector<std::uint64_t> zbuf(pixels, kEmptyPacked);
  if (workers <= 0) workers = default_workers();
  if (workers == 1) {
    for (std::size_t n = 0; n < count; ++n) {
      std::uint32_t slot;
      std::uint64_t value;
      if (point(n, slot, value) && value < zbuf[slot]) zbuf[slot] = value;
    }
    return zbuf;
  }
  parallel_for(count, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t n = begin; n < end; ++n) {
      std::uint32_t slot;
      std::uint64_t value;
      if (point(n, slot, value)) atomic_min(zbuf[slot], value);
    }
  });
  return zbuf;
}

// Kernel 2: unpack the winner of every pixel and fetch its feature.
RenderedView gather(const std::vector<std::uint64_t>& zbuf, const PointCloud& cloud,
                    const VirtualCamera& camera, int workers) {
  RenderedView view(camera, cloud.channels());
  const int w = view.width;
  const int h = view.height;
  const auto C = static_cast<std::size_t>(view.channels);
  parallel_for(static_cast<std::size_t>(h), workers, [&](std::size_t y0, std::size_t y1) {
    for (std::size_t y = y0; y < y1; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::uint64_t v = zbuf[linear_pixel_index(x, static_cast<int>(y), h)];
        if (v == kEmptyPacked) continue;
        const DepthIndex di = unpack_depth_index(v);
        const std::size_t j = view.pixel(x, static_cast<int>(y));
        view.depth[j] = depth_from_key(di.depth_key);
        view.hit_mask[j] = 1;
        view.point_index[j] = di.index;
        const auto f = cloud.feature(di.index);
        std::copy(f.begin(), f.end(), view.features.begin() + static_cast<std::ptrdiff_t>(j * C));
      }
    }
  });
  return view;
}

}  // namespace

ProjectedPoints project(const PointCloud& cloud, const VirtualCamera& camera, int workers) {
  check_cloud_size(cloud);
  ProjectedPoints out;
  const std::size_t n = cloud.size();
  out.width = camera.width();
  out.height = camera.height();
  out.pixel_x.assign(n, -1);
  out.pixel_y.assign(n, -1);
  out.depth.assign(n, 0.0f);
  out.linear_index.assign(n, 0);
  out.in_frustum.assign(n, 0);
  const auto& pos = cloud.positions();
  parallel_for(n, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const ImagePoint ip = camera.project(pos[i].cast<double>());
      out.depth[i] = static_cast<float>(ip.depth);
      int x, y;
      float d;
      if (!to_pixel(camera, pos[i], x, y, d)) continue;
      out.pixel_x[i] = x;
      out.pixel_y[i] = y;
      out.linear_index[i] = linear_pixel_index(x, y, out.height);
      out.in_frustum[i] = 1;
    }
  });
  return out;
}

RenderedView z_order(const ProjectedPoints& proj, const PointCloud& cloud, const VirtualCamera& camera,
                     int workers) {
  if (proj.size() != cloud.size() || proj.width != camera.width() || proj.height != camera.height()) {
    throw std::invalid_argument("z_order: projection does not match cloud and camera");
  }
  check_cloud_size(cloud);
  const auto pixels = static_cast<std::size_t>(camera.width()) * static_cast<std::size_t>(camera.height());
  const auto zbuf = scatter(cloud.size(), pixels, workers,
                            [&](std::size_t n, std::uint32_t& slot, std::uint64_t& value) {
                              if (!proj.in_frustum[n]) return false;
                              slot = proj.linear_index[n];
                              value = pack_unchecked(proj.depth[n], static_cast<std::uint32_t>(n));
                              return true;
                            });
  return gather(zbuf, cloud, camera, workers);
}

RenderedView splat(const RenderedView& view, const SplatConfig& cfg, int workers) {
  cfg.validate();
  RenderedView out = view;
  if (cfg.radius == 0.0 || cfg.max_px == 0) return out;

  const int w = view.width;
  const int h = view.height;
  const std::size_t pixels = view.pixel_count();

  // Squared splat radius and packed key of every hit pixel.
  std::vector<double> rho2(pixels, -1.0);
  std::vector<std::uint64_t> key(pixels, kEmptyPacked);
  double max_rho = 0.0;
  for (std::size_t k = 0; k < pixels; ++k) {
    if (!view.hit_mask[k]) continue;
    const double rho = splat_radius_px(view.camera, cfg.radius, view.depth[k]);
    rho2[k] = rho * rho;
    key[k] = pack_unchecked(view.depth[k], view.point_index[k]);
    max_rho = std::max(max_rho, rho);
  }
  const int reach = static_cast<int>(std::min<double>(std::ceil(max_rho), cfg.max_px));
  if (reach <= 0) return out;

  // Window offsets that can pass the disc test for some pixel. The center is
  // left out: a pixel never beats itself on depth.
  struct Offset {
    int dx, dy;
    double d2;
    std::ptrdiff_t delta;
  };
  std::vector<Offset> offsets;
  for (int dy = -reach; dy <= reach; ++dy) {
    for (int dx = -reach; dx <= reach; ++dx) {
      const double d2 = dx * dx + dy * dy;
      if ((dx == 0 && dy == 0) || d2 > max_rho * max_rho) continue;
      offsets.push_back({dx, dy, d2, static_cast<std::ptrdiff_t>(dy) * w + dx});
    }
  }

  // For hit pixels key[k] < (key[j] & kDepthMask) iff depth[k] < depth[j];
  // for empty j the mask exceeds every real key.
  constexpr std::uint64_t kDepthMask = 0xffffffff00000000ull;
  const auto C = static_cast<std::size_t>(view.channels);
  parallel_for(static_cast<std::size_t>(h), workers, [&](std::size_t y0, std::size_t y1) {
    for (int y = static_cast<int>(y0); y < static_cast<int>(y1); ++y) {
      const bool row_inside = y >= reach && y < h - reach;
      for (int x = 0; x < w; ++x) {
        const std::size_t j = view.pixel(x, y);
        std::uint64_t bound = key[j] & kDepthMask;
        std::size_t best_k = pixels;
        if (row_inside && x >= reach && x < w - reach) {
          for (const Offset& o : offsets) {
            const std::size_t k = j + o.delta;
            if (key[k] < bound && o.d2 <= rho2[k]) {
              bound = key[k];
              best_k = k;
            }
          }
        } else {
          for (const Offset& o : offsets) {
            const int kx = x + o.dx;
            const int ky = y + o.dy;
            if (kx < 0 || kx >= w || ky < 0 || ky >= h) continue;
            const std::size_t k = j + o.delta;
            if (key[k] < bound && o.d2 <= rho2[k]) {
              bound = key[k];
              best_k = k;
            }
          }
        }
        if (best_k == pixels) continue;
        out.depth[j] = view.depth[best_k];
        out.hit_mask[j] = 1;
        out.point_index[j] = view.point_index[best_k];
        std::copy_n(view.features.begin() + static_cast<std::ptrdiff_t>(best_k * C), C,
                    out.features.begin() + static_cast<std::ptrdiff_t>(j * C));
      }
    }
  });
  return out;
}

RenderedView render_view(const PointCloud& cloud, const VirtualCamera& camera, const SplatConfig& cfg,
                         int workers) {
  cfg.validate();
  check_cloud_size(cloud);
  const int h = camera.height();
  const auto pixels = static_cast<std::size_t>(camera.width()) * static_cast<std::size_t>(h);
  const auto& pos = cloud.positions();
  const auto zbuf = scatter(cloud.size(), pixels, workers,
                            [&](std::size_t n, std::uint32_t& slot, std::uint64_t& value) {
                              int x, y;
                              float d;
                              if (!to_pixel(camera, pos[n], x, y, d)) return false;
                              slot = linear_pixel_index(x, y, h);
                              value = pack_unchecked(d, static_cast<std::uint32_t>(n));
                              return true;
                            });
  RenderedView view = gather(zbuf, cloud, camera, workers);
  if (cfg.radius == 0.0 || cfg.max_px == 0) return view;
  return splat(view, cfg, workers);
}

std::vector<RenderedView> render(const PointCloud& cloud, const CameraRig& rig, const SplatConfig& cfg,
                                 int workers) {
  std::vector<RenderedView> views;
  views.reserve(rig.size());
  for (const auto& camera : rig.cameras()) views.push_back(render_view(cloud, camera, cfg, workers));
  return views;
}

}  // namespace vview
