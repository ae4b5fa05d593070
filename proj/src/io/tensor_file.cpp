// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/io/tensor_file.hpp"

#include "vview/io/image.hpp"

#include <fmt/format.h>

#include <bit>
#include <stdexcept>

namespace vview::io {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

std::uint32_t get_u32(std::string_view bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + static_cast<std::size_t>(i)])) << (8 * i);
  }
  return v;
}

}  // namespace

std::size_t Tensor::element_count() const {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

std::string encode_tensor(const Tensor& tensor) {
  if (tensor.dims.size() > 255) throw std::invalid_argument("tensor rank exceeds 255");
  if (tensor.element_count() != tensor.data.size()) {
    throw std::invalid_argument(fmt::format("tensor dims describe {} values but data holds {}",
                                            tensor.element_count(), tensor.data.size()));
  }
  std::string out = "PSTN";
  out.push_back(static_cast<char>(kTensorVersion));
  out.push_back(static_cast<char>(tensor.dims.size()));
  for (auto d : tensor.dims) put_u32(out, d);
  out.push_back(static_cast<char>(kDtypeF32));
  out.reserve(out.size() + 4 * tensor.data.size());
  for (float v : tensor.data) put_u32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

Tensor decode_tensor(std::string_view bytes) {
  if (bytes.size() < 6 || bytes.substr(0, 4) != "PSTN") throw std::runtime_error("tensor file: bad magic");
  const auto version = static_cast<std::uint8_t>(bytes[4]);
  if (version != kTensorVersion) throw std::runtime_error(fmt::format("tensor file: unsupported version {}", version));
  const auto rank = static_cast<std::uint8_t>(bytes[5]);
  const std::size_t header = 6 + 4 * static_cast<std::size_t>(rank) + 1;
  if (bytes.size() < header) throw std::runtime_error("tensor file: truncated header");
  Tensor t;
  for (std::size_t i = 0; i < rank; ++i) t.dims.push_back(get_u32(bytes, 6 + 4 * i));
  const auto dtype = static_cast<std::uint8_t>(bytes[header - 1]);
  if (dtype != kDtypeF32) throw std::runtime_error(fmt::format("tensor file: unsupported dtype tag {}", dtype));
  const std::size_t count = t.element_count();
  if (bytes.size() - header != 4 * count) {
    throw std::runtime_error(fmt::format("tensor file: payload is {} bytes, expected {}", bytes.size() - header,
                                         4 * count));
  }
  t.data.resize(count);
  for (std::size_t i = 0; i < count; ++i) t.data[i] = std::bit_cast<float>(get_u32(bytes, header + 4 * i));
  return t;
}

void write_tensor(const std::filesystem::path& path, const Tensor& tensor) {
  write_bytes(path, encode_tensor(tensor));
}

Tensor read_tensor(const std::filesystem::path& path) {
  try {
    return decode_tensor(read_bytes(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace vview::io
