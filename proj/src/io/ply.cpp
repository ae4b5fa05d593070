// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/io/ply.hpp"

#include "vview/io/image.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <vector>

namespace vview::io {

namespace {

static_assert(std::endian::native == std::endian::little, "binary PLY I/O assumes a little-endian host");

enum class Scalar { I8, U8, I16, U16, I32, U32, F32, F64 };

std::optional<Scalar> parse_scalar(std::string_view name) {
  if (name == "char" || name == "int8") return Scalar::I8;
  if (name == "uchar" || name == "uint8") return Scalar::U8;
  if (name == "short" || name == "int16") return Scalar::I16;
  if (name == "ushort" || name == "uint16") return Scalar::U16;
  if (name == "int" || name == "int32") return Scalar::I32;
  if (name == "uint" || name == "uint32") return Scalar::U32;
  if (name == "float" || name == "float32") return Scalar::F32;
  if (name == "double" || name == "float64") return Scalar::F64;
  return std::nullopt;
}

struct Property {
  std::string name;
  Scalar type = Scalar::F32;
  bool is_list = false;
  Scalar count_type = Scalar::U8;
};

struct Element {
  std::string name;
  std::size_t count = 0;
  std::vector<Property> properties;
};

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t b = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > b) out.push_back(line.substr(b, i - b));
  }
  return out;
}

[[noreturn]] void header_error(int line, std::string_view text, std::string_view what) {
  throw std::runtime_error(fmt::format("PLY header line {} ('{}'): {}", line, text, what));
}

// Reads values of an element body either as ascii tokens or little-endian
// binary.
class BodyReader {
 public:
  BodyReader(std::string_view body, bool ascii) : body_(body), ascii_(ascii) {}

  double read(Scalar type) {
    return ascii_ ? read_ascii() : read_binary(type);
  }

 private:
  double read_ascii() {
    while (pos_ < body_.size() && std::isspace(static_cast<unsigned char>(body_[pos_]))) ++pos_;
    if (pos_ >= body_.size()) throw std::runtime_error("PLY payload is truncated");
    const std::size_t b = pos_;
    while (pos_ < body_.size() && !std::isspace(static_cast<unsigned char>(body_[pos_]))) ++pos_;
    const std::string token(body_.substr(b, pos_ - b));
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) {
      throw std::runtime_error(fmt::format("PLY payload has a bad number '{}'", token));
    }
    return v;
  }

  template <typename T>
  T take() {
    if (body_.size() - pos_ < sizeof(T)) throw std::runtime_error("PLY payload is truncated");
    T v;
    std::memcpy(&v, body_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }

  double read_binary(Scalar type) {
    switch (type) {
      case Scalar::I8: return take<std::int8_t>();
      case Scalar::U8: return take<std::uint8_t>();
      case Scalar::I16: return take<std::int16_t>();
      case Scalar::U16: return take<std::uint16_t>();
      case Scalar::I32: return take<std::int32_t>();
      case Scalar::U32: return take<std::uint32_t>();
      case Scalar::F32: return take<float>();
      case Scalar::F64: return take<double>();
    }
    return 0.0;
  }

  std::string_view body_;
  bool ascii_;
  std::size_t pos_ = 0;
};

}  // namespace

PointCloud parse_ply(std::string_view bytes) {
  // Header.
  std::size_t pos = 0;
  int line_no = 0;
  auto next_line = [&]() -> std::optional<std::string_view> {
    if (pos >= bytes.size()) return std::nullopt;
    const auto nl = bytes.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? bytes.size() : nl;
    std::string_view line = bytes.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = nl == std::string_view::npos ? bytes.size() : nl + 1;
    ++line_no;
    return line;
  };

  auto first = next_line();
  if (!first || *first != "ply") throw std::runtime_error("PLY header line 1: missing 'ply' magic");

  std::optional<bool> ascii;
  std::vector<Element> elements;
  bool ended = false;
  int end_line = 0;
  while (auto line = next_line()) {
    const auto tok = split_ws(*line);
    if (tok.empty()) continue;
    if (tok[0] == "comment" || tok[0] == "obj_info") continue;
    if (tok[0] == "format") {
      if (tok.size() != 3) header_error(line_no, *line, "expected 'format <type> <version>'");
      if (tok[1] == "ascii") {
        ascii = true;
      } else if (tok[1] == "binary_little_endian") {
        ascii = false;
      } else {
        header_error(line_no, *line, fmt::format("unsupported format '{}'", tok[1]));
      }
    } else if (tok[0] == "element") {
      if (tok.size() != 3) header_error(line_no, *line, "expected 'element <name> <count>'");
      Element e;
      e.name = std::string(tok[1]);
      const auto res = std::from_chars(tok[2].data(), tok[2].data() + tok[2].size(), e.count);
      if (res.ec != std::errc() || res.ptr != tok[2].data() + tok[2].size()) {
        header_error(line_no, *line, "bad element count");
      }
      elements.push_back(std::move(e));
    } else if (tok[0] == "property") {
      if (elements.empty()) header_error(line_no, *line, "property before any element");
      Property p;
      if (tok.size() == 5 && tok[1] == "list") {
        const auto count_type = parse_scalar(tok[2]);
        const auto item_type = parse_scalar(tok[3]);
        if (!count_type || !item_type) header_error(line_no, *line, "unsupported property type");
        p.is_list = true;
        p.count_type = *count_type;
        p.type = *item_type;
        p.name = std::string(tok[4]);
      } else if (tok.size() == 3) {
        const auto type = parse_scalar(tok[1]);
        if (!type) header_error(line_no, *line, fmt::format("unsupported property type '{}'", tok[1]));
        p.type = *type;
        p.name = std::string(tok[2]);
      } else {
        header_error(line_no, *line, "malformed property line");
      }
      elements.back().properties.push_back(std::move(p));
    } else if (tok[0] == "end_header") {
      ended = true;
      end_line = line_no;
      break;
    } else {
      header_error(line_no, *line, fmt::format("unknown keyword '{}'", tok[0]));
    }
  }
  if (!ended) throw std::runtime_error(fmt::format("PLY header line {}: missing 'end_header'", line_no));
  if (!ascii) header_error(end_line, "end_header", "no 'format' line before end_header");

  const auto vertex_it =
      std::find_if(elements.begin(), elements.end(), [](const Element& e) { return e.name == "vertex"; });
  if (vertex_it == elements.end()) header_error(end_line, "end_header", "no 'element vertex' declared");

  // Locate the properties we need in the vertex element.
  int ix = -1, iy = -1, iz = -1, ir = -1, ig = -1, ib = -1;
  const auto& vprops = vertex_it->properties;
  for (std::size_t k = 0; k < vprops.size(); ++k) {
    const auto& p = vprops[k];
    const int idx = static_cast<int>(k);
    const bool coord = p.name == "x" || p.name == "y" || p.name == "z";
    const bool color = p.name == "red" || p.name == "green" || p.name == "blue";
    if (coord && (p.is_list || (p.type != Scalar::F32 && p.type != Scalar::F64))) {
      throw std::runtime_error(fmt::format("PLY vertex property '{}' must be float or double", p.name));
    }
    if (color && (p.is_list || p.type != Scalar::U8)) {
      throw std::runtime_error(fmt::format("PLY vertex property '{}' must be uchar", p.name));
    }
    if (p.name == "x") ix = idx;
    if (p.name == "y") iy = idx;
    if (p.name == "z") iz = idx;
    if (p.name == "red") ir = idx;
    if (p.name == "green") ig = idx;
    if (p.name == "blue") ib = idx;
  }
  if (ix < 0 || iy < 0 || iz < 0) {
    throw std::runtime_error("PLY vertex element needs x, y and z properties");
  }
  const bool has_color = ir >= 0 && ig >= 0 && ib >= 0;
  if (!has_color && (ir >= 0 || ig >= 0 || ib >= 0)) {
    throw std::runtime_error("PLY vertex colors need all of red, green and blue");
  }

  BodyReader reader(bytes.substr(pos), *ascii);
  std::vector<Eigen::Vector3f> positions;
  std::vector<float> features;
  std::vector<double> row;
  for (const auto& element : elements) {
    const bool is_vertex = &element == &*vertex_it;
    if (is_vertex) {
      positions.reserve(element.count);
      features.reserve(element.count * 3);
    }
    for (std::size_t n = 0; n < element.count; ++n) {
      row.assign(element.properties.size(), 0.0);
      for (std::size_t k = 0; k < element.properties.size(); ++k) {
        const auto& p = element.properties[k];
        if (p.is_list) {
          const double count = reader.read(p.count_type);
          if (count < 0 || count != std::floor(count)) throw std::runtime_error("PLY list has a bad count");
          for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) reader.read(p.type);
        } else {
          row[k] = reader.read(p.type);
        }
      }
      if (!is_vertex) continue;
      const Eigen::Vector3f xyz(static_cast<float>(row[ix]), static_cast<float>(row[iy]),
                                static_cast<float>(row[iz]));
      if (!xyz.allFinite()) throw std::runtime_error(fmt::format("PLY vertex {} is not finite", n));
      positions.push_back(xyz);
      if (has_color) {
        for (int c : {ir, ig, ib}) {
          const double v = row[c];
          if (v < 0.0 || v > 255.0 || v != std::floor(v)) {
            throw std::runtime_error(fmt::format("PLY vertex {} has a bad color value {}", n, v));
          }
          features.push_back(static_cast<float>(v) / 255.0f);
        }
      } else {
        features.insert(features.end(), {1.0f, 1.0f, 1.0f});
      }
    }
    if (is_vertex) break;
  }
  return PointCloud(std::move(positions), std::move(features), 3);
}

PointCloud read_ply(const std::filesystem::path& path) {
  try {
    return parse_ply(read_bytes(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(fmt::format("{}: {}", path.string(), e.what()));
  }
}

namespace {

std::uint8_t to_u8(float v) {
  const float c = std::isnan(v) ? 0.0f : std::clamp(v, 0.0f, 1.0f);
  return static_cast<std::uint8_t>(std::lround(c * 255.0f));
}

}  // namespace

std::string encode_ply(const PointCloud& cloud, PlyFormat format) {
  if (cloud.channels() != 3) {
    throw std::invalid_argument(fmt::format("PLY output needs 3 color channels, cloud has {}", cloud.channels()));
  }
  std::string out;
  out += "ply\n";
  out += format == PlyFormat::Ascii ? "format ascii 1.0\n" : "format binary_little_endian 1.0\n";
  out += fmt::format("element vertex {}\n", cloud.size());
  out += "property float x\nproperty float y\nproperty float z\n";
  out += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out += "end_header\n";
  for (std::size_t n = 0; n < cloud.size(); ++n) {
    const auto& p = cloud.positions()[n];
    const auto f = cloud.feature(n);
    if (format == PlyFormat::Ascii) {
      // Nine significant digits round-trip any float.
      out += fmt::format("{:.9g} {:.9g} {:.9g} {} {} {}\n", p.x(), p.y(), p.z(), to_u8(f[0]), to_u8(f[1]),
                         to_u8(f[2]));
    } else {
      for (int i = 0; i < 3; ++i) {
        const float v = p[i];
        char buf[sizeof(float)];
        std::memcpy(buf, &v, sizeof(float));
        out.append(buf, sizeof(float));
      }
      for (int c = 0; c < 3; ++c) out.push_back(static_cast<char>(to_u8(f[static_cast<std::size_t>(c)])));
    }
  }
  return out;
}

void write_ply(const std::filesystem::path& path, const PointCloud& cloud, PlyFormat format) {
  write_bytes(path, encode_ply(cloud, format));
}

}  // namespace vview::io
