// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/bench.hpp"

#include "vview/renderer.hpp"
#include "vview/scenes.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <vector>

namespace vview {

namespace {

template <typename Fn>
double median_ms(int repeat, Fn&& fn) {
  std::vector<double> times;
  for (int i = 0; i < repeat; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    times.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

}  // namespace

BenchResult run_bench(const BenchOptions& options) {
  if (options.points == 0 || options.size <= 0 || options.repeat <= 0) {
    throw std::invalid_argument("bench needs points, size and repeat > 0");
  }
  const WorkspaceCube cube(Eigen::Vector3d::Zero(), 1.0);
  const PointCloud cloud = random_cloud(options.points, cube, options.seed);
  const CameraRig rig =
      make_rig(cube, canonical_views(options.views), options.size, options.size, ProjectionKind::Orthographic);
  const SplatConfig cfg{options.radius, options.max_px};

  BenchResult result;
  std::vector<RenderedView> fast;
  const double fast_ms = median_ms(options.repeat, [&] { fast = render(cloud, rig, cfg, options.workers); });
  result.fast = {fast_ms, static_cast<double>(options.points) / (fast_ms / 1000.0)};

  if (options.oracle) {
    std::vector<RenderedView> slow;
    const double slow_ms = median_ms(options.repeat, [&] { slow = render_oracle(cloud, rig, cfg); });
    result.oracle = BenchTiming{slow_ms, static_cast<double>(options.points) / (slow_ms / 1000.0)};
    result.outputs_match = fast.size() == slow.size();
    for (std::size_t i = 0; result.outputs_match && i < fast.size(); ++i) {
      result.outputs_match = bitwise_equal(fast[i], slow[i]);
    }
  }
  return result;
}

}  // namespace vview
