// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/pipeline.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace vview {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int tokens(int pixels, int patch) { return (pixels + patch - 1) / patch; }

}  // namespace

SyntheticScorer::SyntheticScorer(const Eigen::Vector3d& target, double sigma_px, int patch_size)
    : target_(target), sigma_px_(sigma_px), patch_size_(patch_size) {
  if (!(sigma_px_ > 0.0)) throw std::invalid_argument(fmt::format("sigma must be > 0, got {}", sigma_px_));
  if (patch_size_ < 1) throw std::invalid_argument("patch size must be >= 1");
  if (!target_.allFinite()) throw std::invalid_argument("target must be finite");
}

ScorerOutput SyntheticScorer::score(std::span<const RenderedView> views) const {
  ScorerOutput out;
  const double inv_two_sigma2 = 1.0 / (2.0 * sigma_px_ * sigma_px_);
  for (std::size_t i = 0; i < views.size(); ++i) {
    const auto& cam = views[i].camera;
    Heatmap map(cam.width(), cam.height(), static_cast<int>(i));
    FeatureGrid grid(tokens(cam.height(), patch_size_), tokens(cam.width(), patch_size_), 1);
    if (const auto uv = project_into_view(cam, target_)) {
      for (int y = 0; y < map.height; ++y) {
        for (int x = 0; x < map.width; ++x) {
          const double dx = x - uv->x();
          const double dy = y - uv->y();
          map.at(x, y) = static_cast<float>(std::exp(-(dx * dx + dy * dy) * inv_two_sigma2));
        }
      }
      const int px = static_cast<int>(std::round(uv->x()));
      const int py = static_cast<int>(std::round(uv->y()));
      grid.at(py / patch_size_, px / patch_size_, 0) = 1.0f;
    }
    out.heatmaps.push_back(std::move(map));
    out.features.grids.push_back(std::move(grid));
    out.features.cameras.push_back(cam);
  }
  return out;
}

ScorerOutput ZeroScorer::score(std::span<const RenderedView> views) const {
  ScorerOutput out;
  for (std::size_t i = 0; i < views.size(); ++i) {
    const auto& cam = views[i].camera;
    out.heatmaps.emplace_back(cam.width(), cam.height(), static_cast<int>(i));
    out.features.grids.emplace_back(tokens(cam.height(), patch_size_), tokens(cam.width(), patch_size_), 1);
    out.features.cameras.push_back(cam);
  }
  return out;
}

namespace {

void check_scorer_output(const ScorerOutput& out, std::span<const RenderedView> views) {
  if (out.heatmaps.size() != views.size()) {
    throw std::runtime_error(
        fmt::format("scorer returned {} heatmaps for {} views", out.heatmaps.size(), views.size()));
  }
  if (out.features.grids.size() != views.size()) {
    throw std::runtime_error(
        fmt::format("scorer returned {} feature grids for {} views", out.features.grids.size(), views.size()));
  }
  for (std::size_t i = 0; i < views.size(); ++i) {
    const auto& map = out.heatmaps[i];
    if (map.width != views[i].width || map.height != views[i].height) {
      throw std::runtime_error(fmt::format("scorer heatmap {} is {}x{}, view is {}x{}", i, map.width,
                                           map.height, views[i].width, views[i].height));
    }
    map.validate();
  }
  out.features.validate();
}

}  // namespace

StagePrediction run_stage(const PointCloud& cloud, const CameraRig& rig, const StageOptions& options,
                          const Scorer& scorer, std::span<const Eigen::Vector3d> candidates) {
  StagePrediction pred;
  pred.stage = options.stage;
  pred.rendered_cube = rig.cube();

  auto start = Clock::now();
  const auto views = render(cloud, rig, options.splat, options.workers);
  pred.timings.render_ms = ms_since(start);

  start = Clock::now();
  const ScorerOutput scored_views = scorer.score(views);
  pred.timings.scorer_ms = ms_since(start);
  check_scorer_output(scored_views, views);

  start = Clock::now();
  const ScoredCloud scored = score_points(candidates, scored_views.heatmaps, rig);
  const ArgmaxResult best = argmax_point(scored);
  pred.location = best.point;
  pred.candidate_index = best.index;
  pred.score = best.score;
  pred.low_confidence = best.score == 0.0;
  pred.pooled_feature = pool_local_feature(best.point, scored_views.features);
  pred.roi = zoom_cube(options.workspace, best.point, options.zoom);
  pred.timings.fusion_ms = ms_since(start);
  return pred;
}

void PipelineConfig::validate() const {
  if (!(zoom >= 1.0) || !std::isfinite(zoom)) throw std::invalid_argument(fmt::format("zoom must be >= 1, got {}", zoom));
  if (views.empty()) throw std::invalid_argument("pipeline needs at least one view");
  if (width <= 0 || height <= 0) throw std::invalid_argument("pipeline image size must be positive");
  if (coarse_resolution < 1 || fine_resolution < 1) {
    throw std::invalid_argument("candidate resolutions must be >= 1");
  }
  splat.validate();
}

TwoStagePrediction run_two_stage(const PointCloud& cloud, const WorkspaceCube& workspace,
                                 const PipelineConfig& config, const Scorer& scorer) {
  config.validate();
  TwoStagePrediction out;

  StageOptions options;
  options.splat = config.splat;
  options.zoom = config.zoom;
  options.workspace = workspace;
  options.workers = config.workers;

  const CameraRig coarse_rig = make_rig(workspace, config.views, config.width, config.height, config.projection);
  const auto coarse_candidates = candidate_grid(workspace, config.coarse_resolution);
  options.stage = StageId::Coarse;
  out.coarse = run_stage(cloud, coarse_rig, options, scorer, coarse_candidates);

  const CameraRig fine_rig =
      config.zoom > 1.0 ? zoom_rig(coarse_rig, out.coarse.location, config.zoom, workspace)
                        : make_rig(out.coarse.roi, config.views, config.width, config.height, config.projection);
  auto fine_candidates = candidate_grid(fine_rig.cube(), config.fine_resolution);
  fine_candidates.push_back(out.coarse.location);
  options.stage = StageId::Fine;
  out.fine = run_stage(cloud, fine_rig, options, scorer, fine_candidates);
  return out;
}

}  // namespace vview
