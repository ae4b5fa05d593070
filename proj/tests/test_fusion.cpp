// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/fusion.hpp"
#include "vview/oracles.hpp"
#include "vview/scenes.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace vview {
namespace {

const WorkspaceCube kUnit(Eigen::Vector3d::Zero(), 1.0);

std::vector<Heatmap> constant_maps(const CameraRig& rig, std::initializer_list<float> values) {
  std::vector<Heatmap> maps;
  for (float v : values) {
    Heatmap m(rig.width(), rig.height(), static_cast<int>(maps.size()));
    std::fill(m.values.begin(), m.values.end(), v);
    maps.push_back(std::move(m));
  }
  return maps;
}

FeatureMapStack constant_stack(const CameraRig& rig, int rows, int cols, int dim, float value) {
  FeatureMapStack stack;
  for (const auto& cam : rig.cameras()) {
    FeatureGrid g(rows, cols, dim);
    std::fill(g.values.begin(), g.values.end(), value);
    stack.grids.push_back(std::move(g));
    stack.cameras.push_back(cam);
  }
  return stack;
}

TEST(Bilinear, IntegerLocationsReadPixels) {
  Heatmap m(3, 2);
  m.values = {0, 1, 2, 3, 4, 5};
  EXPECT_EQ(bilinear_sample(m, 1.0, 1.0), 4.0);
  EXPECT_EQ(bilinear_sample(m, 0.5, 0.5), 2.0);
  // clamped at the border
  EXPECT_EQ(bilinear_sample(m, -3.0, 0.0), 0.0);
  EXPECT_EQ(bilinear_sample(m, 2.4, 1.0), 5.0);
}

TEST(Heatmap, ValidateRejectsNegativeAndNaN) {
  Heatmap m(2, 2);
  m.values[1] = -0.1f;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m.values[1] = NAN;
  EXPECT_THROW(m.validate(), std::invalid_argument);
}

TEST(ScorePoints, SingleViewPeakAtProjection) {
  const VirtualCamera cam(RigidTransform{}, Orthographic{10.0, 8.0, 8.0}, 16, 16);
  Heatmap m(16, 16);
  m.at(8, 8) = 1.0f;
  const std::vector<Eigen::Vector3d> p{Eigen::Vector3d(0, 0, 1)};
  const ScoredCloud s = score_points(p, std::vector<Heatmap>{m}, std::vector<VirtualCamera>{cam});
  EXPECT_EQ(s.scores[0], 1.0);
  EXPECT_EQ(s.views_hit[0], 1);
}

TEST(ScorePoints, MeanOverViews) {
  const CameraRig rig = make_rig(kUnit, canonical_views(3), 32, 32, ProjectionKind::Orthographic);
  const auto maps = constant_maps(rig, {0.2f, 0.4f, 0.9f});
  const std::vector<Eigen::Vector3d> p{Eigen::Vector3d(0.1, -0.2, 0.3)};
  const ScoredCloud s = score_points(p, maps, rig);
  EXPECT_EQ(s.views_hit[0], 3);
  EXPECT_NEAR(s.scores[0], 0.5, 1e-7);
}

TEST(ScorePoints, AveragesOnlyOverViewsHit) {
  const CameraRig rig = make_rig(kUnit, canonical_views(3), 32, 32, ProjectionKind::Orthographic);
  const auto maps = constant_maps(rig, {0.2f, 0.4f, 0.9f});
  // Above the cube: only the top view sees it.
  const std::vector<Eigen::Vector3d> p{Eigen::Vector3d(0, 0, 0.9), Eigen::Vector3d(5, 5, 5)};
  const ScoredCloud s = score_points(p, maps, rig);
  EXPECT_EQ(s.views_hit[0], 1);
  EXPECT_EQ(s.scores[0], static_cast<double>(0.4f));
  EXPECT_EQ(s.views_hit[1], 0);
  EXPECT_EQ(s.scores[1], -std::numeric_limits<double>::infinity());
}

TEST(ScorePoints, MatchesScalarOracle) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto kind : {ProjectionKind::Orthographic, ProjectionKind::Pinhole}) {
    const CameraRig rig = make_rig(kUnit, canonical_views(5), 40, 30, kind);
    std::vector<Heatmap> maps;
    for (std::size_t v = 0; v < rig.size(); ++v) {
      Heatmap m(40, 30, static_cast<int>(v));
      for (auto& x : m.values) x = static_cast<float>(u(rng));
      maps.push_back(std::move(m));
    }
    std::vector<Eigen::Vector3d> cands;
    for (int i = 0; i < 50; ++i) cands.emplace_back(u(rng) - 0.5, u(rng) - 0.5, u(rng) - 0.5);
    const ScoredCloud s = score_points(cands, maps, rig);
    const auto expect = oracle::score_points(cands, maps, rig.cameras());
    for (std::size_t i = 0; i < cands.size(); ++i) {
      EXPECT_NEAR(s.scores[i], expect[i], 1e-6 * std::abs(expect[i]));
    }
  }
}

TEST(ScorePoints, Errors) {
  const CameraRig rig = make_rig(kUnit, canonical_views(3), 8, 8, ProjectionKind::Orthographic);
  const auto two = constant_maps(rig, {1.0f, 1.0f});
  const std::vector<Eigen::Vector3d> p{Eigen::Vector3d::Zero()};
  EXPECT_THROW(score_points(p, two, rig), std::invalid_argument);
  const auto three = constant_maps(rig, {1.0f, 1.0f, 1.0f});
  EXPECT_THROW(score_points(std::vector<Eigen::Vector3d>{}, three, rig), std::invalid_argument);
  std::vector<Heatmap> wrong_size{Heatmap(4, 8), Heatmap(8, 8), Heatmap(8, 8)};
  EXPECT_THROW(score_points(p, wrong_size, rig), std::invalid_argument);
}

TEST(ScorePoints, MassTowardProjectionNeverLowersScore) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const CameraRig rig = make_rig(kUnit, canonical_views(3), 32, 32, ProjectionKind::Pinhole);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Heatmap> maps;
    for (std::size_t v = 0; v < rig.size(); ++v) {
      Heatmap m(32, 32, static_cast<int>(v));
      for (auto& x : m.values) x = static_cast<float>(u(rng));
      maps.push_back(std::move(m));
    }
    const std::vector<Eigen::Vector3d> p{Eigen::Vector3d(u(rng) - 0.5, u(rng) - 0.5, u(rng) - 0.5)};
    const double before = score_points(p, maps, rig).scores[0];
    for (std::size_t v = 0; v < rig.size(); ++v) {
      const auto uv = project_into_view(rig.cameras()[v], p[0]);
      ASSERT_TRUE(uv);
      const int x = std::clamp(static_cast<int>(std::floor(uv->x())), 0, 31);
      const int y = std::clamp(static_cast<int>(std::floor(uv->y())), 0, 31);
      maps[v].at(x, y) += static_cast<float>(u(rng));
    }
    EXPECT_GE(score_points(p, maps, rig).scores[0], before);
  }
}

TEST(ScorePoints, GaussianBumpsRecoverTarget) {
  const CameraRig rig = make_rig(kUnit, canonical_views(3), 224, 224, ProjectionKind::Orthographic);
  const double scale = rig.cameras()[0].focal_length();
  // Target coordinates are whole pixels away from the center, so every
  // projection lands on a pixel center.
  const Eigen::Vector3d target(17 / scale, -41 / scale, 63 / scale);
  std::vector<Heatmap> maps;
  for (const auto& cam : rig.cameras()) {
    const auto uv = project_into_view(cam, target);
    ASSERT_TRUE(uv);
    Heatmap m(224, 224);
    for (int y = 0; y < 224; ++y) {
      for (int x = 0; x < 224; ++x) {
        const double d2 = (x - uv->x()) * (x - uv->x()) + (y - uv->y()) * (y - uv->y());
        m.at(x, y) = static_cast<float>(std::exp(-d2 / 128.0));
      }
    }
    maps.push_back(std::move(m));
  }
  auto cands = candidate_grid(kUnit, 16);
  cands.insert(cands.begin() + 1234, target);
  const ArgmaxResult best = argmax_point(score_points(cands, maps, rig));
  EXPECT_EQ(best.index, 1234u);
  EXPECT_EQ(best.point, target);
}

TEST(Argmax, PicksMaxAndBreaksTiesLow) {
  ScoredCloud s;
  s.points = {Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(2, 0, 0)};
  s.views_hit = {1, 1, 1};
  s.scores = {0.1, 0.9, 0.3};
  EXPECT_EQ(argmax_point(s).index, 1u);
  EXPECT_EQ(argmax_point(s).point.x(), 1.0);
  s.scores = {0.5, 0.5, 0.5};
  EXPECT_EQ(argmax_point(s).index, 0u);
  s.views_hit = {0, 1, 1};
  s.scores = {-std::numeric_limits<double>::infinity(), 0.5, 0.5};
  EXPECT_EQ(argmax_point(s).index, 1u);
}

TEST(Argmax, MatchesLinearScanAndIgnoresScale) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    ScoredCloud s;
    for (int i = 0; i < 100; ++i) {
      s.points.emplace_back(i, 0, 0);
      s.scores.push_back(std::floor(u(rng) * 20) / 20);  // plenty of ties
      s.views_hit.push_back(1);
    }
    std::size_t expect = 0;
    for (std::size_t i = 1; i < s.scores.size(); ++i) {
      if (s.scores[i] > s.scores[expect]) expect = i;
    }
    EXPECT_EQ(argmax_point(s).index, expect);
    for (auto& x : s.scores) x *= 3.0;
    EXPECT_EQ(argmax_point(s).index, expect);
  }
}

TEST(Argmax, AllUnscoredThrows) {
  ScoredCloud s;
  s.points = {Eigen::Vector3d::Zero()};
  s.scores = {-std::numeric_limits<double>::infinity()};
  s.views_hit = {0};
  EXPECT_THROW(argmax_point(s), std::invalid_argument);
}

TEST(PoolLocalFeature, ConstantGridsFillVisibleSlots) {
  const CameraRig rig = make_rig(kUnit, canonical_views(3), 56, 56, ProjectionKind::Orthographic);
  const FeatureMapStack stack = constant_stack(rig, 4, 4, 2, 0.75f);
  const auto inside = pool_local_feature(Eigen::Vector3d(0.1, 0.2, -0.3), stack);
  ASSERT_EQ(inside.size(), 6u);
  for (float v : inside) EXPECT_EQ(v, 0.75f);
  // Only the top view (slot 1) sees a point hovering above the cube.
  const auto above = pool_local_feature(Eigen::Vector3d(0, 0, 0.9), stack);
  EXPECT_EQ(above, (std::vector<float>{0, 0, 0.75f, 0.75f, 0, 0}));
}

TEST(PoolLocalFeature, OneHotCellOnlyInItsView) {
  const CameraRig rig = make_rig(kUnit, canonical_views(3), 56, 56, ProjectionKind::Orthographic);
  FeatureMapStack stack = constant_stack(rig, 4, 4, 1, 0.0f);
  const Eigen::Vector3d p(0.05, -0.1, 0.2);
  const auto uv = project_into_view(rig.cameras()[2], p);
  ASSERT_TRUE(uv);
  stack.grids[2].at(static_cast<int>(uv->y() / 14), static_cast<int>(uv->x() / 14), 0) = 1.0f;
  const auto pooled = pool_local_feature(p, stack);
  EXPECT_EQ(pooled[0], 0.0f);
  EXPECT_EQ(pooled[1], 0.0f);
  EXPECT_GT(pooled[2], 0.0f);
}

TEST(PoolLocalFeature, MatchesScalarOracle) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const CameraRig rig = make_rig(kUnit, canonical_views(5), 70, 56, ProjectionKind::Pinhole);
  FeatureMapStack stack = constant_stack(rig, 4, 5, 3, 0.0f);
  for (auto& g : stack.grids) {
    for (auto& x : g.values) x = static_cast<float>(u(rng) - 0.5);
  }
  for (int i = 0; i < 100; ++i) {
    const Eigen::Vector3d p(u(rng) - 0.5, u(rng) - 0.5, u(rng) - 0.5);
    const auto got = pool_local_feature(p, stack);
    const auto expect = oracle::pool_local_feature(p, stack);
    ASSERT_EQ(got.size(), expect.size());
    for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], expect[k], 1e-6 * std::abs(expect[k]) + 1e-12);
  }
}

TEST(PoolLocalFeature, Errors) {
  const CameraRig rig = make_rig(kUnit, canonical_views(3), 56, 56, ProjectionKind::Orthographic);
  FeatureMapStack stack = constant_stack(rig, 4, 4, 2, 1.0f);
  EXPECT_THROW(pool_local_feature(Eigen::Vector3d(9, 9, 9), stack), std::invalid_argument);
  stack.grids[1] = FeatureGrid(4, 4, 3);
  EXPECT_THROW(pool_local_feature(Eigen::Vector3d::Zero(), stack), std::invalid_argument);
  stack.grids.pop_back();
  EXPECT_THROW(pool_local_feature(Eigen::Vector3d::Zero(), stack), std::invalid_argument);
}

TEST(CandidateGrid, TwoPerSide) {
  const auto g = candidate_grid(kUnit, 2);
  ASSERT_EQ(g.size(), 8u);
  for (const auto& p : g) {
    for (int a = 0; a < 3; ++a) EXPECT_EQ(std::abs(p[a]), 0.25);
  }
}

TEST(CandidateGrid, ResolutionOneIsCenter) {
  const WorkspaceCube cube(Eigen::Vector3d(1, 2, 3), 0.5);
  const auto g = candidate_grid(cube, 1);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0], cube.center);
}

TEST(CandidateGrid, SpacingFromPairwiseDistances) {
  const auto g = candidate_grid(kUnit, 5);
  ASSERT_EQ(g.size(), 125u);
  double min_d = 1e9;
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = a + 1; b < g.size(); ++b) min_d = std::min(min_d, (g[a] - g[b]).norm());
  }
  EXPECT_NEAR(min_d, 0.2, 1e-12);
  int neighbours = 0;
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = a + 1; b < g.size(); ++b) neighbours += std::abs((g[a] - g[b]).norm() - 0.2) < 1e-9;
  }
  EXPECT_EQ(neighbours, 3 * 5 * 5 * 4);
  EXPECT_THROW(candidate_grid(kUnit, 0), std::invalid_argument);
}

}  // namespace
}  // namespace vview
