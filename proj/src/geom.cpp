// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/geom.hpp"

#include <Eigen/Geometry>
#include <Eigen/LU>
#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vview {

PointCloud::PointCloud(std::vector<Eigen::Vector3f> positions, std::vector<float> features,
                       int channels)
    : positions_(std::move(positions)), features_(std::move(features)), channels_(channels) {
  if (channels_ < 1) {
    throw std::invalid_argument(fmt::format("point cloud needs >= 1 channel, got {}", channels_));
  }
  if (features_.size() != positions_.size() * static_cast<std::size_t>(channels_)) {
    throw std::invalid_argument(fmt::format(
        "point cloud has {} positions but {} feature values for {} channels", positions_.size(),
        features_.size(), channels_));
  }
  for (std::size_t n = 0; n < positions_.size(); ++n) {
    if (!positions_[n].allFinite()) {
      throw std::invalid_argument(fmt::format("point {} has a non-finite coordinate", n));
    }
  }
}

WorkspaceCube::WorkspaceCube(const Eigen::Vector3d& c, double s) : center(c), side(s) {
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw std::invalid_argument(fmt::format("workspace side must be positive, got {}", side));
  }
  if (!center.allFinite()) {
    throw std::invalid_argument("workspace center must be finite");
  }
}

bool WorkspaceCube::contains(const Eigen::Vector3d& p) const {
  const Eigen::Vector3d l = lo();
  const Eigen::Vector3d h = hi();
  return (p.array() >= l.array()).all() && (p.array() <= h.array()).all();
}

bool WorkspaceCube::contains(const WorkspaceCube& other) const {
  return contains(other.lo()) && contains(other.hi());
}

std::string_view to_string(ProjectionKind kind) {
  return kind == ProjectionKind::Pinhole ? "pinhole" : "orthographic";
}

ProjectionKind parse_projection_kind(std::string_view text) {
  if (text == "pinhole" || text == "perspective") return ProjectionKind::Pinhole;
  if (text == "orthographic" || text == "ortho") return ProjectionKind::Orthographic;
  throw std::invalid_argument(fmt::format("unknown projection kind '{}'", text));
}

VirtualCamera::VirtualCamera(RigidTransform world_to_camera, Projection projection, int width,
                             int height)
    : extrinsics_(std::move(world_to_camera)),
      projection_(projection),
      width_(width),
      height_(height) {
  if (width_ <= 0 || height_ <= 0) {
    throw std::invalid_argument(fmt::format("camera size must be positive, got {}x{}", width_, height_));
  }
  const Eigen::Matrix3d& R = extrinsics_.rotation;
  if (!R.allFinite() || !extrinsics_.translation.allFinite()) {
    throw std::invalid_argument("camera extrinsics must be finite");
  }
  const double ortho_err = (R * R.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (ortho_err > 1e-9 || std::abs(R.determinant() - 1.0) > 1e-9) {
    throw std::invalid_argument("camera rotation must be orthonormal with determinant +1");
  }
  if (const auto* pin = std::get_if<Pinhole>(&projection_)) {
    if (!(pin->fx > 0.0) || !(pin->fy > 0.0)) {
      throw std::invalid_argument("pinhole focal lengths must be positive");
    }
  } else if (!(std::get<Orthographic>(projection_).scale > 0.0)) {
    throw std::invalid_argument("orthographic scale must be positive");
  }
}

ProjectionKind VirtualCamera::kind() const {
  return std::holds_alternative<Pinhole>(projection_) ? ProjectionKind::Pinhole
                                                      : ProjectionKind::Orthographic;
}

double VirtualCamera::focal_length() const {
  if (const auto* pin = std::get_if<Pinhole>(&projection_)) return pin->fx;
  return std::get<Orthographic>(projection_).scale;
}

Eigen::Vector3d VirtualCamera::position() const {
  return -extrinsics_.rotation.transpose() * extrinsics_.translation;
}

Eigen::Vector3d VirtualCamera::view_direction() const {
  return extrinsics_.rotation.row(2).transpose();
}

bool VirtualCamera::operator==(const VirtualCamera& other) const {
  if (width_ != other.width_ || height_ != other.height_) return false;
  if (extrinsics_.rotation != other.extrinsics_.rotation ||
      extrinsics_.translation != other.extrinsics_.translation) {
    return false;
  }
  if (projection_.index() != other.projection_.index()) return false;
  if (const auto* a = std::get_if<Pinhole>(&projection_)) {
    const auto& b = std::get<Pinhole>(other.projection_);
    return a->fx == b.fx && a->fy == b.fy && a->cx == b.cx && a->cy == b.cy;
  }
  const auto& a = std::get<Orthographic>(projection_);
  const auto& b = std::get<Orthographic>(other.projection_);
  return a.scale == b.scale && a.cx == b.cx && a.cy == b.cy;
}

std::string_view to_string(ViewName name) {
  switch (name) {
    case ViewName::Front: return "front";
    case ViewName::Back: return "back";
    case ViewName::Left: return "left";
    case ViewName::Right: return "right";
    case ViewName::Top: return "top";
  }
  return "?";
}

ViewName parse_view_name(std::string_view text) {
  if (text == "front") return ViewName::Front;
  if (text == "back") return ViewName::Back;
  if (text == "left") return ViewName::Left;
  if (text == "right") return ViewName::Right;
  if (text == "top") return ViewName::Top;
  throw std::invalid_argument(fmt::format("unknown view name '{}'", text));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<ViewName> parse_view_list(std::string_view text) {
  std::vector<ViewName> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) out.push_back(parse_view_name(item));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

Eigen::Vector3d face_normal(ViewName name) {
  switch (name) {
    case ViewName::Front: return {1.0, 0.0, 0.0};
    case ViewName::Back: return {-1.0, 0.0, 0.0};
    case ViewName::Left: return {0.0, 1.0, 0.0};
    case ViewName::Right: return {0.0, -1.0, 0.0};
    case ViewName::Top: return {0.0, 0.0, 1.0};
  }
  return Eigen::Vector3d::Zero();
}

CameraRig::CameraRig(WorkspaceCube cube, std::vector<ViewName> names,
                     std::vector<VirtualCamera> cameras)
    : cube_(std::move(cube)), names_(std::move(names)), cameras_(std::move(cameras)) {
  if (cameras_.empty()) throw std::invalid_argument("camera rig needs at least one camera");
  if (names_.size() != cameras_.size()) {
    throw std::invalid_argument("camera rig needs one name per camera");
  }
  for (const auto& cam : cameras_) {
    if (cam.width() != cameras_.front().width() || cam.height() != cameras_.front().height()) {
      throw std::invalid_argument("all rig cameras must share one resolution");
    }
  }
}

namespace {

// Rows are the camera x (right), y (down) and z (forward) axes in world
// coordinates.
Eigen::Matrix3d look_rotation(ViewName name) {
  const Eigen::Vector3d forward = -face_normal(name);
  const Eigen::Vector3d down =
      name == ViewName::Top ? Eigen::Vector3d(1.0, 0.0, 0.0) : Eigen::Vector3d(0.0, 0.0, -1.0);
  const Eigen::Vector3d right = down.cross(forward);
  Eigen::Matrix3d R;
  R.row(0) = right.transpose();
  R.row(1) = down.transpose();
  R.row(2) = forward.transpose();
  return R;
}

}  // namespace

CameraRig make_rig(const WorkspaceCube& workspace, std::span<const ViewName> views, int width,
                   int height, ProjectionKind kind) {
  if (views.empty()) throw std::invalid_argument("make_rig: empty view set");
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument(fmt::format("make_rig: bad image size {}x{}", width, height));
  }
  for (std::size_t i = 0; i < views.size(); ++i) {
    for (std::size_t j = i + 1; j < views.size(); ++j) {
      if (views[i] == views[j]) {
        throw std::invalid_argument(fmt::format("make_rig: duplicate view '{}'", to_string(views[i])));
      }
    }
  }

  const double half = 0.5 * workspace.side;
  const double distance = half + kCameraStandoff * workspace.side;
  const double usable = 0.5 - kImageMargin;  // half-extent as a fraction of the image
  const double min_dim = std::min(width, height);
  const double cx = 0.5 * width;
  const double cy = 0.5 * height;

  std::vector<VirtualCamera> cameras;
  cameras.reserve(views.size());
  for (ViewName name : views) {
    RigidTransform xf;
    xf.rotation = look_rotation(name);
    const Eigen::Vector3d eye = workspace.center + distance * face_normal(name);
    xf.translation = -(xf.rotation * eye);

    Projection proj;
    if (kind == ProjectionKind::Orthographic) {
      proj = Orthographic{2.0 * usable * min_dim / workspace.side, cx, cy};
    } else {
      // Largest |x/z| or |y/z| over the cube corners. The cube is symmetric
      // about the optical axis, so the near face corners bound it.
      const double max_ratio = half / (distance - half);
      const double f = usable * min_dim / max_ratio;
      proj = Pinhole{f, f, cx, cy};
    }
    cameras.emplace_back(xf, proj, width, height);
  }
  return CameraRig(workspace, std::vector<ViewName>(views.begin(), views.end()), std::move(cameras));
}

WorkspaceCube zoom_cube(const WorkspaceCube& workspace, const Eigen::Vector3d& roi_center,
                        double zoom) {
  if (!(zoom >= 1.0) || !std::isfinite(zoom)) {
    throw std::invalid_argument(fmt::format("zoom must be >= 1, got {}", zoom));
  }
  if (!workspace.contains(roi_center)) {
    throw std::invalid_argument(fmt::format("roi center ({}, {}, {}) is outside the workspace",
                                            roi_center.x(), roi_center.y(), roi_center.z()));
  }
  const double side = workspace.side / zoom;
  const Eigen::Vector3d lo = workspace.lo().array() + 0.5 * side;
  const Eigen::Vector3d hi = workspace.hi().array() - 0.5 * side;
  Eigen::Vector3d c;
  for (int i = 0; i < 3; ++i) c[i] = std::clamp(roi_center[i], lo[i], std::max(lo[i], hi[i]));
  return WorkspaceCube(c, side);
}

CameraRig zoom_rig(const CameraRig& rig, const Eigen::Vector3d& roi_center, double zoom,
                   const WorkspaceCube& workspace) {
  if (!(zoom > 1.0)) {
    throw std::invalid_argument(fmt::format("zoom_rig: zoom must be > 1, got {}", zoom));
  }
  return make_rig(zoom_cube(workspace, roi_center, zoom), rig.names(), rig.width(), rig.height(),
                  rig.kind());
}

namespace {

std::string join_doubles(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += fmt::format("{:.17g}", values[i]);
  }
  return out;
}

std::vector<double> split_doubles(std::string_view text, std::size_t expected, std::string_view key) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    const std::string item(trim(text.substr(0, comma)));
    double value = 0.0;
    std::istringstream is(item);
    is >> value;
    if (is.fail() || !is.eof()) {
      throw std::invalid_argument(fmt::format("rig key '{}': bad number '{}'", key, item));
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.size() != expected) {
    throw std::invalid_argument(
        fmt::format("rig key '{}': expected {} values, got {}", key, expected, out.size()));
  }
  return out;
}

}  // namespace

std::string format_rig(const CameraRig& rig) {
  std::string out;
  const auto& c = rig.cube().center;
  const std::array<double, 3> center{c.x(), c.y(), c.z()};
  out += fmt::format("cube_center={}\n", join_doubles(center));
  out += fmt::format("cube_side={:.17g}\n", rig.cube().side);
  out += fmt::format("width={}\nheight={}\n", rig.width(), rig.height());
  out += fmt::format("cameras={}\n", rig.size());
  for (std::size_t i = 0; i < rig.size(); ++i) {
    const auto& cam = rig.cameras()[i];
    const auto& R = cam.extrinsics().rotation;
    const auto& t = cam.extrinsics().translation;
    const std::array<double, 9> rot{R(0, 0), R(0, 1), R(0, 2), R(1, 0), R(1, 1),
                                    R(1, 2), R(2, 0), R(2, 1), R(2, 2)};
    const std::array<double, 3> trans{t.x(), t.y(), t.z()};
    out += fmt::format("camera.{}.name={}\n", i, to_string(rig.names()[i]));
    out += fmt::format("camera.{}.rotation={}\n", i, join_doubles(rot));
    out += fmt::format("camera.{}.translation={}\n", i, join_doubles(trans));
    if (const auto* pin = std::get_if<Pinhole>(&cam.projection())) {
      const std::array<double, 4> k{pin->fx, pin->fy, pin->cx, pin->cy};
      out += fmt::format("camera.{}.pinhole={}\n", i, join_doubles(k));
    } else {
      const auto& ortho = std::get<Orthographic>(cam.projection());
      const std::array<double, 3> k{ortho.scale, ortho.cx, ortho.cy};
      out += fmt::format("camera.{}.orthographic={}\n", i, join_doubles(k));
    }
  }
  return out;
}

CameraRig parse_rig(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument(fmt::format("rig line without '=': '{}'", line));
    }
    kv[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
  }
  auto get = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument(fmt::format("rig is missing key '{}'", key));
    return it->second;
  };
  auto get_int = [&](const std::string& key) {
    return static_cast<int>(split_doubles(get(key), 1, key)[0]);
  };

  const auto center = split_doubles(get("cube_center"), 3, "cube_center");
  const WorkspaceCube cube({center[0], center[1], center[2]},
                           split_doubles(get("cube_side"), 1, "cube_side")[0]);
  const int width = get_int("width");
  const int height = get_int("height");
  const int count = get_int("cameras");

  std::vector<ViewName> names;
  std::vector<VirtualCamera> cameras;
  for (int i = 0; i < count; ++i) {
    const std::string prefix = fmt::format("camera.{}.", i);
    names.push_back(parse_view_name(get(prefix + "name")));
    const auto r = split_doubles(get(prefix + "rotation"), 9, prefix + "rotation");
    const auto t = split_doubles(get(prefix + "translation"), 3, prefix + "translation");
    RigidTransform xf;
    xf.rotation << r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7], r[8];
    xf.translation = {t[0], t[1], t[2]};
    Projection proj;
    if (kv.contains(prefix + "pinhole")) {
      const auto k = split_doubles(get(prefix + "pinhole"), 4, prefix + "pinhole");
      proj = Pinhole{k[0], k[1], k[2], k[3]};
    } else {
      const auto k = split_doubles(get(prefix + "orthographic"), 3, prefix + "orthographic");
      proj = Orthographic{k[0], k[1], k[2]};
    }
    cameras.emplace_back(xf, proj, width, height);
  }
  return CameraRig(cube, std::move(names), std::move(cameras));
}

}  // namespace vview
