// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vview/geom.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace vview::io {

enum class PlyFormat { Ascii, BinaryLittleEndian };

/// Reads the vertex element of an ascii or binary_little_endian PLY file.
/// x, y, z must be float or double; optional red, green, blue must be uchar
/// and map to [0, 1] by /255. Without colors every feature is 1.0. Other
/// properties and elements are skipped. Throws std::runtime_error on malformed
/// headers, unsupported property types and truncated payloads.
PointCloud parse_ply(std::string_view bytes);
PointCloud read_ply(const std::filesystem::path& path);

/// Writes float x, y, z and uchar red, green, blue. The cloud must have three
/// channels; colors are clamped to [0, 1] and rounded to the nearest 1/255.
std::string encode_ply(const PointCloud& cloud, PlyFormat format);
void write_ply(const std::filesystem::path& path, const PointCloud& cloud, PlyFormat format);

}  // namespace vview::io
