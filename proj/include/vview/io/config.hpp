// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vview/geom.hpp"
#include "vview/pipeline.hpp"

#include <cstdint>
#include <filesystem>
#include <string_view>

namespace vview::io {

/// Scene description read from a `key = value` text file. Blank lines and
/// lines starting with '#' are ignored.
///
///   cloud              path to a PLY file, relative to the config file
///   workspace_center   x,y,z
///   workspace_side     meters
///   views              comma-separated view names
///   image_size         square size in px (or width / height)
///   projection         orthographic | pinhole
///   splat_radius       meters
///   splat_max_px       px
///   zoom               >= 1
///   coarse_resolution  candidate grid resolution of the coarse stage
///   fine_resolution    candidate grid resolution of the fine stage
///   sigma_px           synthetic scorer bump width
///   seed               integer
///   workers            0 = all cores
struct SceneConfig {
  std::filesystem::path cloud_path;
  WorkspaceCube workspace;
  PipelineConfig pipeline;
  double sigma_px = 8.0;
  std::uint64_t seed = 0;
};

/// `base_dir` resolves relative cloud paths. Throws std::invalid_argument on
/// unknown keys, bad values, or a missing cloud file.
SceneConfig parse_scene_config(std::string_view text, const std::filesystem::path& base_dir);
SceneConfig read_scene_config(const std::filesystem::path& path);

}  // namespace vview::io
