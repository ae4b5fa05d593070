// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vview/fusion.hpp"
#include "vview/renderer.hpp"

#include <filesystem>
#include <span>
#include <string>

namespace vview::io {

/// Binary PPM (P6). Values are clamped to [0, 1] and scaled by 255 with
/// rounding. `rgb` is row-major with three channels per pixel.
std::string encode_ppm(int width, int height, std::span<const float> rgb);

/// Binary PGM (P5) after min-max normalization to [0, 255]. A constant image
/// encodes as all zeros.
std::string encode_pgm(int width, int height, std::span<const float> values);

/// PPM for 3-channel views, PGM for 1-channel views.
std::string encode_feature_image(const RenderedView& view);
/// PGM of the depth image with background pixels set to 0 before normalizing.
std::string encode_depth_image(const RenderedView& view);
std::string encode_heatmap_image(const Heatmap& heatmap);

void write_bytes(const std::filesystem::path& path, std::string_view bytes);
std::string read_bytes(const std::filesystem::path& path);

}  // namespace vview::io
