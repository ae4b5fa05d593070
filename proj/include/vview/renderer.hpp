// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vview/geom.hpp"

#include <bit>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace vview {

/// Per-point projection results, structure-of-arrays.
///
/// The linear index of pixel (x, y) is x * height + y. For the square images
/// every rig produces this is the familiar x * w + y; using the height as the
/// stride keeps it collision free for non-square images too.
struct ProjectedPoints {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> pixel_x;
  std::vector<std::int32_t> pixel_y;
  std::vector<float> depth;
  std::vector<std::uint32_t> linear_index;
  std::vector<std::uint8_t> in_frustum;

  std::size_t size() const { return depth.size(); }
};

inline std::uint32_t linear_pixel_index(int x, int y, int height) {
  return static_cast<std::uint32_t>(x) * static_cast<std::uint32_t>(height) +
         static_cast<std::uint32_t>(y);
}

// ---------------------------------------------------------------------------
// Packed depth-index values.
//
// Depth occupies the high 32 bits as the IEEE-754 bit pattern of a
// non-negative float, which orders the same way as the floats themselves.
// The point index occupies the low 32 bits, so the minimum packed value is
// the nearest point with ties going to the lowest index.
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kEmptyPacked = std::numeric_limits<std::uint64_t>::max();
inline constexpr std::uint32_t kNoPoint = std::numeric_limits<std::uint32_t>::max();

struct DepthIndex {
  std::uint32_t depth_key = 0;
  std::uint32_t index = 0;
};

/// Throws std::invalid_argument for negative or non-finite depth.
std::uint32_t depth_key(float depth);
float depth_from_key(std::uint32_t key);

/// Throws std::invalid_argument for bad depth or index >= 2^32.
std::uint64_t pack_depth_index(float depth, std::uint64_t index);

inline DepthIndex unpack_depth_index(std::uint64_t value) {
  return {static_cast<std::uint32_t>(value >> 32), static_cast<std::uint32_t>(value & 0xffffffffu)};
}

// Unchecked variant for hot loops; depth must already be known to be >= 0.
inline std::uint64_t pack_unchecked(float depth, std::uint32_t index);

// ---------------------------------------------------------------------------

/// Feature, depth and hit images for one camera. Images are row-major:
/// pixel (x, y) lives at y * width + x, features at (y * width + x) * C.
struct RenderedView {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<float> features;          // background 0
  std::vector<float> depth;             // background +inf
  std::vector<std::uint8_t> hit_mask;   // 1 where a point landed
  std::vector<std::uint32_t> point_index;  // source point, kNoPoint for background
  VirtualCamera camera;

  RenderedView(const VirtualCamera& cam, int channels);

  std::size_t pixel(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x);
  }
  std::size_t pixel_count() const { return depth.size(); }
  std::span<const float> feature(std::size_t pixel) const {
    return {features.data() + pixel * static_cast<std::size_t>(channels),
            static_cast<std::size_t>(channels)};
  }
};

/// Bit-for-bit comparison of every buffer, including NaN/inf payloads.
bool bitwise_equal(const RenderedView& a, const RenderedView& b);

struct SplatConfig {
  double radius = 0.0;  // world-space disc radius, meters
  int max_px = 5;       // cap on the screen-space radius

  void validate() const;
};

/// Screen radius of a splat at `depth`: r * f / d for pinhole cameras,
/// r * scale for orthographic ones.
inline double splat_radius_px(const VirtualCamera& camera, double radius, float depth) {
  if (camera.kind() == ProjectionKind::Pinhole) {
    return radius * camera.focal_length() / static_cast<double>(depth);
  }
  return radius * camera.focal_length();
}

/// Projects every point. Pixel coordinates round half away from zero.
ProjectedPoints project(const PointCloud& cloud, const VirtualCamera& camera, int workers = 0);

/// Depth test by atomic minimum over packed depth-index values, then a
/// per-pixel gather of depth and features.
RenderedView z_order(const ProjectedPoints& proj, const PointCloud& cloud,
                     const VirtualCamera& camera, int workers = 0);

/// Single-pass screen-space splatting: every output pixel reads only the
/// input view.
RenderedView splat(const RenderedView& view, const SplatConfig& cfg, int workers = 0);

/// project -> z_order -> splat for one camera, with projection fused into the
/// scatter.
RenderedView render_view(const PointCloud& cloud, const VirtualCamera& camera,
                         const SplatConfig& cfg, int workers = 0);

/// One view per rig camera, in rig order. `workers` = 0 uses all cores.
std::vector<RenderedView> render(const PointCloud& cloud, const CameraRig& rig,
                                 const SplatConfig& cfg, int workers = 0);

/// Reference renderer: sequential, no packing. Points are bucketed by pixel,
/// each pixel linearly searches its bucket for the lexicographic minimum of
/// (depth, index), then splatting scans the full max_px window per pixel.
std::vector<RenderedView> render_oracle(const PointCloud& cloud, const CameraRig& rig,
                                        const SplatConfig& cfg);
RenderedView render_view_oracle(const PointCloud& cloud, const VirtualCamera& camera,
                                const SplatConfig& cfg);
RenderedView splat_oracle(const RenderedView& view, const SplatConfig& cfg);

// ---------------------------------------------------------------------------

inline std::uint64_t pack_unchecked(float depth, std::uint32_t index) {
  // +0.0 and -0.0 both map to key 0.
  const std::uint32_t bits = depth == 0.0f ? 0u : std::bit_cast<std::uint32_t>(depth);
  return (static_cast<std::uint64_t>(bits) << 32) | index;
}

}  // namespace vview
