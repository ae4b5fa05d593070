// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cstdint>
#include <vector>

namespace vview {

struct TrajectoryStep {
  std::int64_t timestep = 0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();
  bool gripper_open = true;
};

struct TrajectoryLog {
  std::vector<TrajectoryStep> steps;

  /// Throws unless timesteps strictly increase and every quaternion has unit
  /// norm within 1e-6.
  void validate() const;
};

/// Timesteps where the gripper state differs from the previous step, plus the
/// final timestep. Sorted and free of duplicates. Throws on an empty log.
std::vector<std::int64_t> extract_keyframes(const TrajectoryLog& log);

}  // namespace vview
