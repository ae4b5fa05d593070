// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/verify.hpp"

#include "vview/fusion.hpp"
#include "vview/oracles.hpp"
#include "vview/renderer.hpp"
#include "vview/scenes.hpp"
#include "vview/upsample.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace vview {

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

namespace {

bool rel_close(double a, double b, double tol = 1e-6) {
  if (a == b) return true;  // covers matching infinities
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)) + 1e-12;
}

const WorkspaceCube kUnitCube(Eigen::Vector3d::Zero(), 1.0);

VerifyCheck check_render(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  int scenes = 0;
  for (int i = 0; i < 6; ++i) {
    const bool lattice = i % 2 == 0;
    const std::size_t n = 2000 + 3000 * static_cast<std::size_t>(i);
    const int channels = i == 3 ? 1 : 3;
    const PointCloud cloud = lattice ? lattice_cloud(n, kUnitCube, 16, rng(), channels)
                                     : random_cloud(n, kUnitCube, rng(), channels);
    const auto kind = i < 3 ? ProjectionKind::Orthographic : ProjectionKind::Pinhole;
    const CameraRig rig = make_rig(kUnitCube, canonical_views(i % 2 ? 5 : 3), 96, 96, kind);
    const SplatConfig cfg{std::array<double, 3>{0.0, 0.006, 0.03}[i % 3], 5};
    const auto fast = render(cloud, rig, cfg, 0);
    const auto slow = render_oracle(cloud, rig, cfg);
    for (std::size_t v = 0; v < fast.size(); ++v) failures += bitwise_equal(fast[v], slow[v]) ? 0 : 1;
    ++scenes;
  }
  return {"render == oracle", failures == 0, fmt::format("{} scenes, {} mismatched views", scenes, failures)};
}

VerifyCheck check_splat(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  int cases = 0;
  for (auto kind : {ProjectionKind::Orthographic, ProjectionKind::Pinhole}) {
    const PointCloud cloud = random_cloud(400, kUnitCube, rng());
    const CameraRig rig = make_rig(kUnitCube, canonical_views(3), 80, 80, kind);
    for (const auto& cam : rig.cameras()) {
      const RenderedView base = z_order(project(cloud, cam, 1), cloud, cam, 1);
      for (const SplatConfig cfg : {SplatConfig{0.004, 5}, SplatConfig{0.02, 3}, SplatConfig{0.05, 8}}) {
        failures += bitwise_equal(splat(base, cfg, 0), splat_oracle(base, cfg)) ? 0 : 1;
        ++cases;
      }
    }
  }
  return {"splat == oracle", failures == 0, fmt::format("{} cases, {} mismatches", cases, failures)};
}

VerifyCheck check_fusion(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int failures = 0;
  double worst = 0.0;
  for (int instance = 0; instance < 10; ++instance) {
    const auto kind = instance % 2 ? ProjectionKind::Pinhole : ProjectionKind::Orthographic;
    const CameraRig rig = make_rig(kUnitCube, canonical_views(instance % 2 ? 5 : 3), 64, 48, kind);
    std::vector<Heatmap> maps;
    FeatureMapStack stack;
    for (std::size_t v = 0; v < rig.size(); ++v) {
      Heatmap map(64, 48, static_cast<int>(v));
      for (auto& x : map.values) x = static_cast<float>(unit(rng));
      maps.push_back(std::move(map));
      FeatureGrid grid(4, 5, 3);
      for (auto& x : grid.values) x = static_cast<float>(unit(rng) - 0.5);
      stack.grids.push_back(std::move(grid));
      stack.cameras.push_back(rig.cameras()[v]);
    }
    std::vector<Eigen::Vector3d> candidates;
    for (int m = 0; m < 50; ++m) {
      candidates.emplace_back(unit(rng) - 0.5, unit(rng) - 0.5, unit(rng) - 0.5);
    }
    const ScoredCloud scored = score_points(candidates, maps, rig);
    const auto expect = oracle::score_points(candidates, maps, rig.cameras());
    for (std::size_t m = 0; m < candidates.size(); ++m) {
      if (!rel_close(scored.scores[m], expect[m])) ++failures;
      if (std::isfinite(expect[m])) worst = std::max(worst, std::abs(scored.scores[m] - expect[m]));
    }
    const auto pooled = pool_local_feature(candidates.front(), stack);
    const auto pooled_expect = oracle::pool_local_feature(candidates.front(), stack);
    for (std::size_t k = 0; k < pooled.size(); ++k) {
      if (!rel_close(pooled[k], pooled_expect[k], 1e-6)) ++failures;
    }
  }
  return {"fusion == oracle", failures == 0, fmt::format("{} mismatches, max abs diff {:.3g}", failures, worst)};
}

VerifyCheck check_upsample(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 2.0);
  int failures = 0;
  const int t = 4;
  const int s = kDefaultUpsampleFactor;
  CoarseFeatureGrid grid(t, t + 1, 3);
  for (auto& x : grid.values) x = normal(rng);
  std::vector<double> raw(static_cast<std::size_t>(t * s) * (t + 1) * s * kNeighbors);
  for (auto& x : raw) x = normal(rng);
  const ConvexWeights weights = normalize_to_convex(t * s, (t + 1) * s, raw);
  const auto soft = oracle::softmax9(raw);
  for (std::size_t i = 0; i < soft.size(); ++i) failures += rel_close(weights.values[i], soft[i], 1e-9) ? 0 : 1;
  const FineGrid fine = convex_upsample(grid, weights, s);
  const FineGrid expect = oracle::convex_upsample(grid, weights, s);
  for (std::size_t i = 0; i < fine.values.size(); ++i) failures += rel_close(fine.values[i], expect.values[i]) ? 0 : 1;
  return {"upsample == oracle", failures == 0, fmt::format("{} mismatches", failures)};
}

VerifyCheck check_determinism(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int i = 0; i < 3; ++i) {
    const PointCloud cloud = i % 2 ? lattice_cloud(20000, kUnitCube, 24, rng()) : random_cloud(20000, kUnitCube, rng());
    const CameraRig rig = make_rig(kUnitCube, canonical_views(3), 96, 96,
                                   i == 2 ? ProjectionKind::Pinhole : ProjectionKind::Orthographic);
    const SplatConfig cfg{0.01, 5};
    const auto one = render(cloud, rig, cfg, 1);
    for (int workers : {2, 8}) {
      const auto many = render(cloud, rig, cfg, workers);
      for (std::size_t v = 0; v < one.size(); ++v) failures += bitwise_equal(one[v], many[v]) ? 0 : 1;
    }
  }
  return {"parallel determinism", failures == 0, fmt::format("{} mismatched views", failures)};
}

}  // namespace

VerifyReport run_verification(std::uint64_t seed) {
  VerifyReport report;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::vector<std::uint32_t> seeds(5);
  seq.generate(seeds.begin(), seeds.end());
  report.checks.push_back(check_render(seeds[0]));
  report.checks.push_back(check_splat(seeds[1]));
  report.checks.push_back(check_fusion(seeds[2]));
  report.checks.push_back(check_upsample(seeds[3]));
  report.checks.push_back(check_determinism(seeds[4]));
  return report;
}

}  // namespace vview
