// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

// Regenerates the bundled demo point cloud:
//   vview_make_demo data/demo/scene.ply

#include "vview/io/ply.hpp"
#include "vview/scenes.hpp"

#include <fmt/format.h>

#include <exception>

int main(int argc, char** argv) {
  if (argc != 2) {
    fmt::print(stderr, "usage: {} <out.ply>\n", argv[0]);
    return 2;
  }
  try {
    const vview::WorkspaceCube cube(Eigen::Vector3d::Zero(), 1.0);
    vview::io::write_ply(argv[1], vview::demo_scene(cube, 20000, 7), vview::io::PlyFormat::BinaryLittleEndian);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
