// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/io/trajectory.hpp"

#include "vview/io/image.hpp"

#include <fmt/format.h>
#include "json.hpp"

#include <stdexcept>

namespace vview::io {

TrajectoryLog parse_trajectory(std::string_view text) {
  TrajectoryLog log;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string line(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      TrajectoryStep step;
      step.timestep = j.at("t").get<std::int64_t>();
      const auto pos = j.at("position").get<std::vector<double>>();
      const auto quat = j.at("quaternion").get<std::vector<double>>();
      if (pos.size() != 3 || quat.size() != 4) throw std::invalid_argument("position needs 3 and quaternion 4 values");
      step.position = {pos[0], pos[1], pos[2]};
      step.orientation = Eigen::Quaterniond(quat[3], quat[0], quat[1], quat[2]);
      step.gripper_open = j.at("gripper_open").get<bool>();
      log.steps.push_back(step);
    } catch (const std::exception& e) {
      throw std::invalid_argument(fmt::format("trajectory line {}: {}", line_no, e.what()));
    }
  }
  log.validate();
  return log;
}

TrajectoryLog read_trajectory(const std::filesystem::path& path) { return parse_trajectory(read_bytes(path)); }

std::string encode_trajectory(const TrajectoryLog& log) {
  std::string out;
  for (const auto& s : log.steps) {
    nlohmann::json j;
    j["t"] = s.timestep;
    j["position"] = {s.position.x(), s.position.y(), s.position.z()};
    j["quaternion"] = {s.orientation.x(), s.orientation.y(), s.orientation.z(), s.orientation.w()};
    j["gripper_open"] = s.gripper_open;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace vview::io
