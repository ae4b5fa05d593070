// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/io/image.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <vector>

namespace vview::io {

namespace {

void check_size(int width, int height, std::size_t values, std::size_t per_pixel) {
  if (width <= 0 || height <= 0) throw std::invalid_argument(fmt::format("bad image size {}x{}", width, height));
  if (values != static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * per_pixel) {
    throw std::invalid_argument("image buffer does not match its size");
  }
}

}  // namespace

std::string encode_ppm(int width, int height, std::span<const float> rgb) {
  check_size(width, height, rgb.size(), 3);
  std::string out = fmt::format("P6\n{} {}\n255\n", width, height);
  out.reserve(out.size() + rgb.size());
  for (float v : rgb) {
    const float c = std::isnan(v) ? 0.0f : std::clamp(v, 0.0f, 1.0f);
    out.push_back(static_cast<char>(std::lround(c * 255.0f)));
  }
  return out;
}

std::string encode_pgm(int width, int height, std::span<const float> values) {
  check_size(width, height, values.size(), 1);
  float lo = std::numeric_limits<float>::infinity();
  float hi = -std::numeric_limits<float>::infinity();
  for (float v : values) {
    if (!std::isfinite(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::string out = fmt::format("P5\n{} {}\n255\n", width, height);
  out.reserve(out.size() + values.size());
  const bool flat = !(hi > lo);
  for (float v : values) {
    if (flat || !std::isfinite(v)) {
      out.push_back(0);
      continue;
    }
    const double t = (static_cast<double>(v) - lo) / (static_cast<double>(hi) - lo);
    out.push_back(static_cast<char>(std::lround(t * 255.0)));
  }
  return out;
}

std::string encode_feature_image(const RenderedView& view) {
  if (view.channels == 3) return encode_ppm(view.width, view.height, view.features);
  if (view.channels == 1) return encode_pgm(view.width, view.height, view.features);
  throw std::invalid_argument(fmt::format("cannot write a {}-channel view as an image", view.channels));
}

std::string encode_depth_image(const RenderedView& view) {
  std::vector<float> depth(view.depth.size(), 0.0f);
  for (std::size_t j = 0; j < depth.size(); ++j) {
    if (view.hit_mask[j]) depth[j] = view.depth[j];
  }
  return encode_pgm(view.width, view.height, depth);
}

std::string encode_heatmap_image(const Heatmap& heatmap) {
  return encode_pgm(heatmap.width, heatmap.height, heatmap.values);
}

void write_bytes(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error(fmt::format("failed writing '{}'", path.string()));
}

std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace vview::io
