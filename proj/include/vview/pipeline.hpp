// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vview/fusion.hpp"
#include "vview/geom.hpp"
#include "vview/renderer.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace vview {

struct ScorerOutput {
  std::vector<Heatmap> heatmaps;  // one per view, same size as the view
  FeatureMapStack features;       // one grid per view
};

/// Seam for the network that turns rendered views into per-view heatmaps and
/// token feature grids. Implementations must be safe for concurrent calls.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual ScorerOutput score(std::span<const RenderedView> views) const = 0;
};

/// Oracle scorer: a Gaussian bump at each view's projection of a known target,
/// and single-channel feature grids that are one-hot at the token holding
/// that projection. Views that miss the target get all-zero outputs.
class SyntheticScorer final : public Scorer {
 public:
  SyntheticScorer(const Eigen::Vector3d& target, double sigma_px, int patch_size = 14);

  ScorerOutput score(std::span<const RenderedView> views) const override;

  const Eigen::Vector3d& target() const { return target_; }
  double sigma_px() const { return sigma_px_; }

 private:
  Eigen::Vector3d target_;
  double sigma_px_;
  int patch_size_;
};

/// Scorer whose outputs are all zero.
class ZeroScorer final : public Scorer {
 public:
  explicit ZeroScorer(int patch_size = 14) : patch_size_(patch_size) {}
  ScorerOutput score(std::span<const RenderedView> views) const override;

 private:
  int patch_size_;
};

enum class StageId { Coarse, Fine };

struct StageTimings {
  double render_ms = 0.0;
  double scorer_ms = 0.0;
  double fusion_ms = 0.0;
};

struct StagePrediction {
  StageId stage = StageId::Coarse;
  Eigen::Vector3d location = Eigen::Vector3d::Zero();
  std::size_t candidate_index = 0;
  double score = 0.0;
  // Set when the best score is exactly zero, e.g. for all-zero heatmaps.
  bool low_confidence = false;
  std::vector<float> pooled_feature;
  WorkspaceCube rendered_cube;  // cube the stage's cameras covered
  WorkspaceCube roi;            // cube for the next stage
  StageTimings timings;
};

struct StageOptions {
  StageId stage = StageId::Coarse;
  SplatConfig splat;
  double zoom = 4.0;
  WorkspaceCube workspace;
  int workers = 0;
};

/// render -> scorer -> score_points -> argmax_point -> pool_local_feature. The
/// ROI is a cube of side workspace.side / zoom at the argmax, translated to
/// fit in the workspace.
StagePrediction run_stage(const PointCloud& cloud, const CameraRig& rig, const StageOptions& options,
                          const Scorer& scorer, std::span<const Eigen::Vector3d> candidates);

inline constexpr double kDefaultZoom = 4.0;
inline constexpr int kDefaultImageSize = 224;
inline constexpr int kDefaultPatchSize = 14;

struct PipelineConfig {
  double zoom = kDefaultZoom;
  std::vector<ViewName> views{ViewName::Front, ViewName::Top, ViewName::Right};
  int width = kDefaultImageSize;
  int height = kDefaultImageSize;
  ProjectionKind projection = ProjectionKind::Orthographic;
  int coarse_resolution = 32;
  int fine_resolution = 32;
  SplatConfig splat{0.005, 5};
  int workers = 0;

  void validate() const;
};

struct TwoStagePrediction {
  StagePrediction coarse;
  StagePrediction fine;
};

/// Coarse stage over the workspace, then a fine stage over the coarse ROI.
/// The fine candidates are a grid over the ROI plus the coarse argmax.
TwoStagePrediction run_two_stage(const PointCloud& cloud, const WorkspaceCube& workspace,
                                 const PipelineConfig& config, const Scorer& scorer);

}  // namespace vview
