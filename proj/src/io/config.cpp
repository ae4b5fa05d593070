// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/io/config.hpp"

#include "vview/io/image.hpp"

#include <fmt/format.h>

#include <charconv>
#include <stdexcept>
#include <string>
#include <vector>

namespace vview::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view text, std::string_view key, int line) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw std::invalid_argument(fmt::format("config line {}: '{}' has a bad value '{}'", line, key, text));
  }
  return value;
}

Eigen::Vector3d parse_vec3(std::string_view text, std::string_view key, int line) {
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) {
    const auto comma = text.find(',');
    if ((i < 2) == (comma == std::string_view::npos)) {
      throw std::invalid_argument(fmt::format("config line {}: '{}' needs three comma-separated values", line, key));
    }
    v[i] = parse_number<double>(trim(text.substr(0, comma)), key, line);
    if (comma != std::string_view::npos) text.remove_prefix(comma + 1);
  }
  return v;
}

}  // namespace

SceneConfig parse_scene_config(std::string_view text, const std::filesystem::path& base_dir) {
  SceneConfig cfg;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double side = 1.0;
  bool have_cloud = false;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument(fmt::format("config line {}: expected key = value", line_no));
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    auto& p = cfg.pipeline;
    try {
      if (key == "cloud") {
        cfg.cloud_path = std::filesystem::path(std::string(value));
        if (cfg.cloud_path.is_relative()) cfg.cloud_path = base_dir / cfg.cloud_path;
        have_cloud = true;
      } else if (key == "workspace_center") {
        center = parse_vec3(value, key, line_no);
      } else if (key == "workspace_side") {
        side = parse_number<double>(value, key, line_no);
      } else if (key == "views") {
        p.views = parse_view_list(value);
      } else if (key == "image_size") {
        p.width = p.height = parse_number<int>(value, key, line_no);
      } else if (key == "width") {
        p.width = parse_number<int>(value, key, line_no);
      } else if (key == "height") {
        p.height = parse_number<int>(value, key, line_no);
      } else if (key == "projection") {
        p.projection = parse_projection_kind(value);
      } else if (key == "splat_radius") {
        p.splat.radius = parse_number<double>(value, key, line_no);
      } else if (key == "splat_max_px") {
        p.splat.max_px = parse_number<int>(value, key, line_no);
      } else if (key == "zoom") {
        p.zoom = parse_number<double>(value, key, line_no);
      } else if (key == "coarse_resolution") {
        p.coarse_resolution = parse_number<int>(value, key, line_no);
      } else if (key == "fine_resolution") {
        p.fine_resolution = parse_number<int>(value, key, line_no);
      } else if (key == "workers") {
        p.workers = parse_number<int>(value, key, line_no);
      } else if (key == "sigma_px") {
        cfg.sigma_px = parse_number<double>(value, key, line_no);
      } else if (key == "seed") {
        cfg.seed = parse_number<std::uint64_t>(value, key, line_no);
      } else {
        throw std::invalid_argument(fmt::format("config line {}: unknown key '{}'", line_no, key));
      }
    } catch (const std::invalid_argument& e) {
      const std::string what = e.what();
      if (what.rfind("config line", 0) == 0) throw;
      throw std::invalid_argument(fmt::format("config line {}: {}", line_no, what));
    }
  }

  if (!have_cloud) throw std::invalid_argument("config: missing 'cloud'");
  if (!std::filesystem::is_regular_file(cfg.cloud_path)) {
    throw std::invalid_argument(fmt::format("config: cloud file '{}' does not exist", cfg.cloud_path.string()));
  }
  cfg.workspace = WorkspaceCube(center, side);
  if (!(cfg.sigma_px > 0.0)) throw std::invalid_argument("config: sigma_px must be > 0");
  cfg.pipeline.validate();
  return cfg;
}

SceneConfig read_scene_config(const std::filesystem::path& path) {
  return parse_scene_config(read_bytes(path), path.parent_path());
}

}  // namespace vview::io
