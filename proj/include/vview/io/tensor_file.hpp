// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vview::io {

/// Dense row-major float32 tensor.
struct Tensor {
  std::vector<std::uint32_t> dims;
  std::vector<float> data;

  std::size_t element_count() const;
  bool operator==(const Tensor&) const = default;
};

// File layout, all integers little-endian:
//   "PSTN" | version u8 | rank u8 | rank x dim u32 | dtype u8 | payload
inline constexpr std::uint8_t kTensorVersion = 1;
inline constexpr std::uint8_t kDtypeF32 = 1;

std::string encode_tensor(const Tensor& tensor);
Tensor decode_tensor(std::string_view bytes);

void write_tensor(const std::filesystem::path& path, const Tensor& tensor);
Tensor read_tensor(const std::filesystem::path& path);

}  // namespace vview::io
