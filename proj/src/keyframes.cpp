// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/keyframes.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace vview {

void TrajectoryLog::validate() const {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i > 0 && steps[i].timestep <= steps[i - 1].timestep) {
      throw std::invalid_argument(fmt::format("trajectory timesteps must increase: {} follows {}",
                                              steps[i].timestep, steps[i - 1].timestep));
    }
    const double norm = steps[i].orientation.coeffs().norm();
    if (!(std::abs(norm - 1.0) <= 1e-6)) {
      throw std::invalid_argument(
          fmt::format("trajectory step {} has a non-unit quaternion (norm {})", steps[i].timestep, norm));
    }
    if (!steps[i].position.allFinite()) {
      throw std::invalid_argument(fmt::format("trajectory step {} has a non-finite position", steps[i].timestep));
    }
  }
}

std::vector<std::int64_t> extract_keyframes(const TrajectoryLog& log) {
  if (log.steps.empty()) throw std::invalid_argument("extract_keyframes: empty trajectory");
  log.validate();
  std::vector<std::int64_t> out;
  for (std::size_t i = 1; i < log.steps.size(); ++i) {
    if (log.steps[i].gripper_open != log.steps[i - 1].gripper_open) out.push_back(log.steps[i].timestep);
  }
  if (out.empty() || out.back() != log.steps.back().timestep) out.push_back(log.steps.back().timestep);
  return out;
}

}  // namespace vview
