// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vview {

/// N points with C feature channels each. Features are stored point-major,
/// so point n owns features[n * C, (n + 1) * C).
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(std::vector<Eigen::Vector3f> positions, std::vector<float> features, int channels);

  std::size_t size() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }
  int channels() const { return channels_; }

  const std::vector<Eigen::Vector3f>& positions() const { return positions_; }
  const std::vector<float>& features() const { return features_; }

  std::span<const float> feature(std::size_t n) const {
    return {features_.data() + n * static_cast<std::size_t>(channels_),
            static_cast<std::size_t>(channels_)};
  }

 private:
  std::vector<Eigen::Vector3f> positions_;
  std::vector<float> features_;
  int channels_ = 3;
};

/// Axis-aligned cube in world coordinates.
struct WorkspaceCube {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double side = 1.0;

  WorkspaceCube() = default;
  WorkspaceCube(const Eigen::Vector3d& c, double s);

  Eigen::Vector3d lo() const { return center.array() - 0.5 * side; }
  Eigen::Vector3d hi() const { return center.array() + 0.5 * side; }
  // Closed-box containment.
  bool contains(const Eigen::Vector3d& p) const;
  bool contains(const WorkspaceCube& other) const;
};

struct Pinhole {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;
};

struct Orthographic {
  double scale = 1.0;  // px per meter
  double cx = 0.0;
  double cy = 0.0;
};

using Projection = std::variant<Pinhole, Orthographic>;

enum class ProjectionKind { Pinhole, Orthographic };

std::string_view to_string(ProjectionKind kind);
ProjectionKind parse_projection_kind(std::string_view text);

/// world -> camera: p_cam = rotation * p_world + translation.
struct RigidTransform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
};

/// Continuous image-plane coordinates of a point. `depth` is the camera-frame
/// z; `u`/`v` are meaningless when `in_front` is false.
struct ImagePoint {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
  bool in_front = false;
};

/// Pinhole or orthographic virtual camera. Camera frame is x right, y down,
/// z forward; pixel (x, y) covers continuous coordinates [x - 0.5, x + 0.5).
class VirtualCamera {
 public:
  VirtualCamera(RigidTransform world_to_camera, Projection projection, int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  const RigidTransform& extrinsics() const { return extrinsics_; }
  const Projection& projection() const { return projection_; }
  ProjectionKind kind() const;

  /// fx for pinhole cameras, px/m scale for orthographic ones.
  double focal_length() const;

  /// Camera center in world coordinates.
  Eigen::Vector3d position() const;
  /// Unit optical axis (camera +z) in world coordinates.
  Eigen::Vector3d view_direction() const;

  /// Scalar projection kernel shared by every render path. Pinhole points
  /// with z <= 0 and orthographic points with z < 0 are not in front.
  ImagePoint project(const Eigen::Vector3d& p_world) const {
    const Eigen::Matrix3d& R = extrinsics_.rotation;
    const Eigen::Vector3d& t = extrinsics_.translation;
    const double x = R(0, 0) * p_world.x() + R(0, 1) * p_world.y() + R(0, 2) * p_world.z() + t.x();
    const double y = R(1, 0) * p_world.x() + R(1, 1) * p_world.y() + R(1, 2) * p_world.z() + t.y();
    const double z = R(2, 0) * p_world.x() + R(2, 1) * p_world.y() + R(2, 2) * p_world.z() + t.z();
    ImagePoint out;
    out.depth = z;
    if (const auto* pin = std::get_if<Pinhole>(&projection_)) {
      out.in_front = z > 0.0;
      if (out.in_front) {
        out.u = pin->fx * x / z + pin->cx;
        out.v = pin->fy * y / z + pin->cy;
      }
    } else {
      const auto& ortho = std::get<Orthographic>(projection_);
      out.in_front = z >= 0.0;
      out.u = ortho.scale * x + ortho.cx;
      out.v = ortho.scale * y + ortho.cy;
    }
    return out;
  }

  bool operator==(const VirtualCamera& other) const;

 private:
  RigidTransform extrinsics_;
  Projection projection_;
  int width_;
  int height_;
};

enum class ViewName { Front, Back, Left, Right, Top };

std::string_view to_string(ViewName name);
ViewName parse_view_name(std::string_view text);
/// Parses a comma-separated list such as "front,top,right".
std::vector<ViewName> parse_view_list(std::string_view text);

/// Outward normal of the cube face a view looks through. Front is +x, back
/// -x, left +y, right -y, top +z.
Eigen::Vector3d face_normal(ViewName name);

/// Ordered named cameras around a workspace cube. All cameras share one
/// resolution.
class CameraRig {
 public:
  CameraRig(WorkspaceCube cube, std::vector<ViewName> names, std::vector<VirtualCamera> cameras);

  const WorkspaceCube& cube() const { return cube_; }
  const std::vector<ViewName>& names() const { return names_; }
  const std::vector<VirtualCamera>& cameras() const { return cameras_; }
  std::size_t size() const { return cameras_.size(); }
  ProjectionKind kind() const { return cameras_.front().kind(); }
  int width() const { return cameras_.front().width(); }
  int height() const { return cameras_.front().height(); }

 private:
  WorkspaceCube cube_;
  std::vector<ViewName> names_;
  std::vector<VirtualCamera> cameras_;
};

/// Standoff between a camera and the cube face it looks through, in units of
/// the cube side.
inline constexpr double kCameraStandoff = 1.0;
/// Fraction of the image kept free on every border.
inline constexpr double kImageMargin = 0.01;

/// Builds cameras on the outward normals of the named cube faces, each looking
/// at the cube center, with projection parameters chosen so the whole cube
/// lands inside [margin, 1 - margin] of the image.
CameraRig make_rig(const WorkspaceCube& workspace, std::span<const ViewName> views, int width,
                   int height, ProjectionKind kind);

/// Cube of side workspace.side / zoom centered at roi_center, translated so it
/// lies inside the workspace.
WorkspaceCube zoom_cube(const WorkspaceCube& workspace, const Eigen::Vector3d& roi_center,
                        double zoom);

/// Same views and resolution as `rig`, re-aimed at zoom_cube(...).
CameraRig zoom_rig(const CameraRig& rig, const Eigen::Vector3d& roi_center, double zoom,
                   const WorkspaceCube& workspace);

/// Text form of a rig: one `key=value` per line, doubles printed with 17
/// significant digits so parse_rig(format_rig(r)) == r.
std::string format_rig(const CameraRig& rig);
CameraRig parse_rig(std::string_view text);

}  // namespace vview
