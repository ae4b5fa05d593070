// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vview/keyframes.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace vview::io {

/// One JSON object per line:
///   {"t": 3, "position": [x, y, z], "quaternion": [x, y, z, w], "gripper_open": true}
/// Blank lines are ignored. The result is validated.
TrajectoryLog parse_trajectory(std::string_view text);
TrajectoryLog read_trajectory(const std::filesystem::path& path);
std::string encode_trajectory(const TrajectoryLog& log);

}  // namespace vview::io
