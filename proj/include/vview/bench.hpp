// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

namespace vview {

struct BenchOptions {
  std::size_t points = 1'000'000;
  int size = 224;
  int views = 3;
  int repeat = 10;
  bool oracle = false;
  double radius = 0.005;
  int max_px = 5;
  int workers = 0;
  std::uint64_t seed = 1;
};

struct BenchTiming {
  double ms_per_frame = 0.0;  // one frame renders every view
  double points_per_sec = 0.0;
};

struct BenchResult {
  BenchTiming fast;
  std::optional<BenchTiming> oracle;
  bool outputs_match = true;  // only meaningful when the oracle ran
};

/// Renders a uniform random cloud in the unit cube with an orthographic rig,
/// `repeat` times per path, and reports the median frame time.
BenchResult run_bench(const BenchOptions& options);

}  // namespace vview
