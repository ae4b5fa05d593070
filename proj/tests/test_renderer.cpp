// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/renderer.hpp"
#include "vview/scenes.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

namespace vview {
namespace {

const WorkspaceCube kUnit(Eigen::Vector3d::Zero(), 1.0);
constexpr float kInf = std::numeric_limits<float>::infinity();

VirtualCamera identity_ortho(int w, int h, double scale) {
  return VirtualCamera(RigidTransform{}, Orthographic{scale, w / 2.0, h / 2.0}, w, h);
}

// A view with explicit hit pixels, as z_order would leave it.
RenderedView make_view(const VirtualCamera& cam, std::initializer_list<std::tuple<int, int, float, std::uint32_t>> hits) {
  RenderedView view(cam, 1);
  for (const auto& [x, y, d, idx] : hits) {
    const std::size_t j = view.pixel(x, y);
    view.depth[j] = d;
    view.hit_mask[j] = 1;
    view.point_index[j] = idx;
    view.features[j] = static_cast<float>(idx);
  }
  return view;
}

TEST(LinearIndex, ColumnMajorStride) {
  EXPECT_EQ(linear_pixel_index(3, 5, 224), 677u);
  EXPECT_EQ(linear_pixel_index(0, 0, 224), 0u);
}

TEST(Project, OpticalAxisPoint) {
  const VirtualCamera cam(RigidTransform{}, Pinhole{100, 100, 112, 112}, 224, 224);
  const PointCloud cloud({Eigen::Vector3f(0, 0, 1)}, {1.0f}, 1);
  const ProjectedPoints p = project(cloud, cam, 1);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.pixel_x[0], 112);
  EXPECT_EQ(p.pixel_y[0], 112);
  EXPECT_EQ(p.depth[0], 1.0f);
  EXPECT_EQ(p.in_frustum[0], 1);
  EXPECT_EQ(p.linear_index[0], 112u * 224u + 112u);
}

TEST(Project, MatchesScalarOracle) {
  const PointCloud cloud = random_cloud(1000, WorkspaceCube(Eigen::Vector3d::Zero(), 1.4), 5);
  const CameraRig rig = make_rig(kUnit, canonical_views(5), 224, 224, ProjectionKind::Pinhole);
  for (const auto& cam : rig.cameras()) {
    const ProjectedPoints p = project(cloud, cam, 0);
    const auto& pin = std::get<Pinhole>(cam.projection());
    for (std::size_t n = 0; n < cloud.size(); ++n) {
      const Eigen::Vector3d c =
          cam.extrinsics().rotation * cloud.positions()[n].cast<double>() + cam.extrinsics().translation;
      const long x = std::lround(pin.fx * c.x() / c.z() + pin.cx);
      const long y = std::lround(pin.fy * c.y() / c.z() + pin.cy);
      const bool inside = c.z() > 0 && x >= 0 && x < 224 && y >= 0 && y < 224;
      ASSERT_EQ(p.in_frustum[n] != 0, inside) << n;
      EXPECT_EQ(p.depth[n], static_cast<float>(c.z()));
      if (!inside) continue;
      EXPECT_EQ(p.pixel_x[n], x);
      EXPECT_EQ(p.pixel_y[n], y);
      EXPECT_EQ(p.linear_index[n], static_cast<std::uint32_t>(x * 224 + y));
    }
  }
}

TEST(Project, RoundsHalfAwayFromZero) {
  const VirtualCamera cam = identity_ortho(8, 8, 1.0);  // u = X + 4
  const PointCloud cloud({Eigen::Vector3f(-3.5f, 0.5f, 1), Eigen::Vector3f(-4.5f, 0, 1), Eigen::Vector3f(3.5f, 0, 1),
                          Eigen::Vector3f(-4.4f, -4.4f, 1)},
                         {0, 1, 2, 3}, 1);
  const ProjectedPoints p = project(cloud, cam, 1);
  EXPECT_EQ(p.pixel_x[0], 1);  // 0.5 -> 1
  EXPECT_EQ(p.pixel_y[0], 5);  // 4.5 -> 5
  EXPECT_EQ(p.in_frustum[1], 0);  // -0.5 -> -1
  EXPECT_EQ(p.in_frustum[2], 0);  // 7.5 -> 8
  EXPECT_EQ(p.pixel_x[3], 0);  // -0.4 -> 0
}

TEST(Pack, KnownBitPatterns) {
  EXPECT_EQ(pack_depth_index(1.0f, 5), 0x3F80000000000005ull);
  EXPECT_EQ(pack_depth_index(0.0f, 0), 0ull);
  EXPECT_EQ(pack_depth_index(-0.0f, 7), 7ull);
  EXPECT_EQ(pack_depth_index(2.0f, 0xffffffffull), 0x40000000ffffffffull);
}

TEST(Pack, UnpackRecoversInputs) {
  const DepthIndex di = unpack_depth_index(pack_depth_index(0.375f, 123456));
  EXPECT_EQ(di.index, 123456u);
  EXPECT_EQ(depth_from_key(di.depth_key), 0.375f);
}

TEST(Pack, Errors) {
  EXPECT_THROW(pack_depth_index(-1.0f, 0), std::invalid_argument);
  EXPECT_THROW(pack_depth_index(std::numeric_limits<float>::quiet_NaN(), 0), std::invalid_argument);
  EXPECT_THROW(pack_depth_index(kInf, 0), std::invalid_argument);
  EXPECT_THROW(pack_depth_index(1.0f, 1ull << 32), std::invalid_argument);
}

TEST(Pack, MonotoneInDepthAndIndex) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<float> d(0.0f, 10.0f);
  for (int i = 0; i < 20000; ++i) {
    float a = d(rng), b = d(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    const auto ia = static_cast<std::uint32_t>(rng()), ib = static_cast<std::uint32_t>(rng());
    ASSERT_LT(pack_depth_index(a, ia), pack_depth_index(b, ib));
    ASSERT_EQ(pack_depth_index(a, ia) < pack_depth_index(a, ib), ia < ib);
  }
}

TEST(ZOrder, NearerPointWins) {
  const VirtualCamera cam = identity_ortho(4, 4, 1.0);
  const PointCloud cloud({Eigen::Vector3f(0, 0, 2), Eigen::Vector3f(0, 0, 1)}, {0.2f, 0.8f}, 1);
  const RenderedView view = z_order(project(cloud, cam), cloud, cam);
  const std::size_t j = view.pixel(2, 2);
  EXPECT_EQ(view.point_index[j], 1u);
  EXPECT_EQ(view.features[j], 0.8f);
  EXPECT_EQ(view.depth[j], 1.0f);
}

TEST(ZOrder, EqualDepthLowestIndexWins) {
  const VirtualCamera cam = identity_ortho(4, 4, 1.0);
  std::vector<Eigen::Vector3f> pos(8, Eigen::Vector3f(5, 5, 5));  // off screen
  std::vector<float> feat(8);
  for (int i = 0; i < 8; ++i) feat[i] = static_cast<float>(i);
  pos[7] = Eigen::Vector3f(0, 0, 1);
  pos[3] = Eigen::Vector3f(0, 0, 1);
  const PointCloud cloud(pos, feat, 1);
  for (int workers : {1, 2, 8}) {
    const RenderedView view = z_order(project(cloud, cam), cloud, cam, workers);
    EXPECT_EQ(view.point_index[view.pixel(2, 2)], 3u);
  }
}

TEST(ZOrder, EmptyPixelIsBackground) {
  const VirtualCamera cam = identity_ortho(4, 4, 1.0);
  const PointCloud cloud({Eigen::Vector3f(0, 0, 1)}, {0.5f, 0.5f, 0.5f}, 3);
  const RenderedView view = z_order(project(cloud, cam), cloud, cam);
  const std::size_t j = view.pixel(0, 0);
  EXPECT_EQ(view.hit_mask[j], 0);
  EXPECT_EQ(view.depth[j], kInf);
  EXPECT_EQ(view.point_index[j], kNoPoint);
  for (int c = 0; c < 3; ++c) EXPECT_EQ(view.features[j * 3 + c], 0.0f);
}

TEST(ZOrder, RejectsMismatchedProjection) {
  const VirtualCamera cam = identity_ortho(4, 4, 1.0);
  const PointCloud one({Eigen::Vector3f(0, 0, 1)}, {1.0f}, 1);
  const PointCloud two({Eigen::Vector3f(0, 0, 1), Eigen::Vector3f(0, 0, 1)}, {1.0f, 1.0f}, 1);
  EXPECT_THROW(z_order(project(one, cam), two, cam), std::invalid_argument);
}

TEST(Splat, ZeroRadiusIsIdentity) {
  const VirtualCamera cam = identity_ortho(9, 9, 1.0);
  const RenderedView in = make_view(cam, {{4, 4, 1.0f, 0}, {1, 2, 2.0f, 1}});
  EXPECT_TRUE(bitwise_equal(splat(in, SplatConfig{0.0, 5}), in));
  EXPECT_TRUE(bitwise_equal(splat(in, SplatConfig{1.0, 0}), in));
}

TEST(Splat, SingleHitFillsDiscOfRadiusTwo) {
  const VirtualCamera cam = identity_ortho(21, 21, 4.0);
  const RenderedView in = make_view(cam, {{10, 10, 1.0f, 0}});
  ASSERT_EQ(splat_radius_px(cam, 0.5, 1.0f), 2.0);
  const RenderedView out = splat(in, SplatConfig{0.5, 5});
  int filled = 0;
  for (int y = 0; y < 21; ++y) {
    for (int x = 0; x < 21; ++x) {
      const std::size_t j = out.pixel(x, y);
      const bool inside = (x - 10) * (x - 10) + (y - 10) * (y - 10) <= 4;
      ASSERT_EQ(out.hit_mask[j] != 0, inside) << x << "," << y;
      if (inside) {
        EXPECT_EQ(out.depth[j], 1.0f);
        EXPECT_EQ(out.point_index[j], 0u);
        ++filled;
      } else {
        EXPECT_EQ(out.depth[j], kInf);
      }
    }
  }
  EXPECT_EQ(filled, 13);
}

TEST(Splat, NearerNeighborReplacesFartherPixel) {
  const VirtualCamera cam = identity_ortho(12, 12, 1.0);
  const RenderedView in = make_view(cam, {{5, 5, 1.0f, 0}, {6, 5, 3.0f, 1}});
  const RenderedView out = splat(in, SplatConfig{1.5, 5});
  EXPECT_EQ(out.point_index[out.pixel(6, 5)], 0u);
  EXPECT_EQ(out.depth[out.pixel(6, 5)], 1.0f);
  EXPECT_EQ(out.point_index[out.pixel(5, 5)], 0u);
  EXPECT_EQ(out.depth[out.pixel(5, 5)], 1.0f);
}

TEST(Splat, SingleHitPinholeRadiusFollowsDepth) {
  const VirtualCamera cam(RigidTransform{}, Pinhole{200, 200, 20, 20}, 41, 41);
  const RenderedView in = make_view(cam, {{20, 20, 2.0f, 0}});
  // rho = 0.04 * 200 / 2 = 4
  const RenderedView out = splat(in, SplatConfig{0.04, 10});
  for (int y = 0; y < 41; ++y) {
    for (int x = 0; x < 41; ++x) {
      const bool inside = (x - 20) * (x - 20) + (y - 20) * (y - 20) <= 16;
      EXPECT_EQ(out.hit_mask[out.pixel(x, y)] != 0, inside);
    }
  }
}

TEST(Splat, CapLimitsReach) {
  const VirtualCamera cam = identity_ortho(21, 21, 1.0);
  const RenderedView in = make_view(cam, {{10, 10, 1.0f, 0}});
  const RenderedView out = splat(in, SplatConfig{6.0, 2});
  EXPECT_TRUE(out.hit_mask[out.pixel(12, 12)]);
  EXPECT_FALSE(out.hit_mask[out.pixel(13, 10)]);
}

TEST(Splat, DoesNotChain) {
  // B is reachable from A only through C; single-pass splatting must not
  // carry A's point two hops.
  const VirtualCamera cam = identity_ortho(10, 3, 1.0);
  const RenderedView in = make_view(cam, {{1, 1, 1.0f, 0}, {2, 1, 2.0f, 1}});
  const RenderedView out = splat(in, SplatConfig{1.0, 5});
  EXPECT_EQ(out.point_index[out.pixel(3, 1)], 1u);
  EXPECT_EQ(out.point_index[out.pixel(2, 1)], 0u);
}

TEST(Splat, ConfigValidation) {
  EXPECT_THROW((SplatConfig{-0.1, 5}.validate()), std::invalid_argument);
  EXPECT_THROW((SplatConfig{0.1, -1}.validate()), std::invalid_argument);
  EXPECT_THROW((SplatConfig{std::numeric_limits<double>::infinity(), 1}.validate()), std::invalid_argument);
}

TEST(Render, CloudOutsideFrustumGivesBackground) {
  const PointCloud cloud = random_cloud(500, WorkspaceCube(Eigen::Vector3d(50, 50, 50), 1.0), 3);
  const CameraRig rig = make_rig(kUnit, canonical_views(3), 32, 32, ProjectionKind::Orthographic);
  for (const auto& view : render(cloud, rig, SplatConfig{0.01, 5})) {
    for (auto h : view.hit_mask) EXPECT_EQ(h, 0);
    for (float f : view.features) EXPECT_EQ(f, 0.0f);
  }
}

TEST(Render, MatchesOracleOnSeededScenes) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const PointCloud cloud = seed % 2 ? random_cloud(3000, kUnit, seed) : lattice_cloud(3000, kUnit, 12, seed);
    const auto kind = seed < 3 ? ProjectionKind::Orthographic : ProjectionKind::Pinhole;
    const CameraRig rig = make_rig(kUnit, canonical_views(seed % 2 ? 5 : 3), 64, 64, kind);
    const SplatConfig cfg{0.01 * static_cast<double>(seed % 3), 5};
    const auto fast = render(cloud, rig, cfg);
    const auto slow = render_oracle(cloud, rig, cfg);
    ASSERT_EQ(fast.size(), rig.size());
    for (std::size_t v = 0; v < fast.size(); ++v) EXPECT_TRUE(bitwise_equal(fast[v], slow[v])) << seed << "/" << v;
  }
}

TEST(Render, ComposesProjectZOrderSplat) {
  const PointCloud cloud = random_cloud(4000, kUnit, 9);
  const CameraRig rig = make_rig(kUnit, canonical_views(3), 48, 48, ProjectionKind::Pinhole);
  const SplatConfig cfg{0.01, 4};
  const auto views = render(cloud, rig, cfg);
  for (std::size_t v = 0; v < rig.size(); ++v) {
    const auto& cam = rig.cameras()[v];
    const RenderedView staged = splat(z_order(project(cloud, cam), cloud, cam), cfg);
    EXPECT_TRUE(bitwise_equal(views[v], staged));
  }
}

TEST(Render, CubeCornersInFiveViewOrthographicRig) {
  std::vector<Eigen::Vector3f> pos;
  std::vector<float> feat;
  for (int i = 0; i < 8; ++i) {
    pos.emplace_back(i & 1 ? 0.5f : -0.5f, i & 2 ? 0.5f : -0.5f, i & 4 ? 0.5f : -0.5f);
    feat.insert(feat.end(), {float(i & 1), float((i >> 1) & 1), float((i >> 2) & 1)});
  }
  const PointCloud cloud(pos, feat, 3);
  const CameraRig rig = make_rig(kUnit, canonical_views(5), 64, 64, ProjectionKind::Orthographic);
  const auto views = render(cloud, rig, SplatConfig{});
  std::vector<int> seen(8, 0);
  for (const auto& view : views) {
    std::set<std::uint32_t> ids;
    for (auto idx : view.point_index) {
      if (idx != kNoPoint) ids.insert(idx);
    }
    EXPECT_EQ(ids.size(), 4u);  // the near face; the far face hides behind it
    for (auto idx : ids) ++seen[idx];
  }
  // No bottom view: top corners show in 3 views, bottom corners in 2.
  for (int i = 0; i < 8; ++i) EXPECT_EQ(seen[i], i & 4 ? 3 : 2) << i;
}

TEST(Render, ParallelDeterminism) {
  const PointCloud cloud = lattice_cloud(30000, kUnit, 20, 4);
  const CameraRig rig = make_rig(kUnit, canonical_views(5), 96, 96, ProjectionKind::Pinhole);
  const SplatConfig cfg{0.008, 5};
  const auto one = render(cloud, rig, cfg, 1);
  for (int workers : {2, 8}) {
    const auto many = render(cloud, rig, cfg, workers);
    for (std::size_t v = 0; v < one.size(); ++v) EXPECT_TRUE(bitwise_equal(one[v], many[v]));
  }
}

class RenderProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RenderProperties, Invariants) {
  const std::uint64_t seed = GetParam();
  const PointCloud cloud = random_cloud(5000, kUnit, seed);
  const auto kind = seed % 2 ? ProjectionKind::Pinhole : ProjectionKind::Orthographic;
  const CameraRig rig = make_rig(kUnit, canonical_views(3), 64, 64, kind);
  for (const auto& cam : rig.cameras()) {
    const RenderedView base = z_order(project(cloud, cam), cloud, cam);
    const RenderedView out = splat(base, SplatConfig{0.015, 5});
    for (std::size_t j = 0; j < out.pixel_count(); ++j) {
      // hit_mask false exactly when depth is the sentinel
      ASSERT_EQ(out.hit_mask[j] == 0, out.depth[j] == kInf);
      // splatting never increases depth
      ASSERT_LE(out.depth[j], base.depth[j]);
      if (!out.hit_mask[j]) continue;
      // features are copied from the source point, never blended
      const auto f = cloud.feature(out.point_index[j]);
      for (int c = 0; c < 3; ++c) ASSERT_EQ(out.features[j * 3 + c], f[c]);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RenderProperties, ::testing::Range<std::uint64_t>(0, 6));

TEST(Render, DepthAsFeatureReproducesDepthImage) {
  const PointCloud base = random_cloud(3000, kUnit, 31);
  const CameraRig rig = make_rig(kUnit, canonical_views(3), 48, 48, ProjectionKind::Pinhole);
  for (const auto& cam : rig.cameras()) {
    std::vector<float> depth_feature;
    for (const auto& p : base.positions()) {
      depth_feature.push_back(static_cast<float>(cam.project(p.cast<double>()).depth));
    }
    const PointCloud cloud(base.positions(), depth_feature, 1);
    const RenderedView view = render_view(cloud, cam, SplatConfig{0.01, 5});
    for (std::size_t j = 0; j < view.pixel_count(); ++j) {
      if (view.hit_mask[j]) {
        ASSERT_EQ(view.features[j], view.depth[j]);
      }
    }
  }
}

}  // namespace
}  // namespace vview
