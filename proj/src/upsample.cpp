// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/upsample.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vview {

CoarseFeatureGrid::CoarseFeatureGrid(int r, int c, int ch) : rows(r), cols(c), channels(ch) {
  if (r < 1 || c < 1 || ch < 1) {
    throw std::invalid_argument(fmt::format("bad feature grid dims {}x{}x{}", r, c, ch));
  }
  values.assign(static_cast<std::size_t>(r) * c * ch, 0.0);
}

ConvexWeights::ConvexWeights(int r, int c) : rows(r), cols(c) {
  if (r < 1 || c < 1) throw std::invalid_argument(fmt::format("bad weight dims {}x{}", r, c));
  values.assign(static_cast<std::size_t>(r) * c * kNeighbors, 0.0);
}

void ConvexWeights::validate() const {
  if (values.size() != static_cast<std::size_t>(rows) * cols * kNeighbors) {
    throw std::invalid_argument("convex weight buffer does not match its dims");
  }
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < cols; ++x) {
      double sum = 0.0;
      for (int k = 0; k < kNeighbors; ++k) {
        const double w = at(y, x, k);
        if (!(w >= 0.0) || !std::isfinite(w)) {
          throw std::invalid_argument(fmt::format("weight ({}, {}, {}) = {} is not convex", y, x, k, w));
        }
        sum += w;
      }
      if (std::abs(sum - 1.0) > kConvexTolerance) {
        throw std::invalid_argument(fmt::format("weights at ({}, {}) sum to {}", y, x, sum));
      }
    }
  }
}

FineGrid convex_upsample(const CoarseFeatureGrid& grid, const ConvexWeights& weights, int factor) {
  if (factor < 1) throw std::invalid_argument(fmt::format("upsample factor must be >= 1, got {}", factor));
  if (grid.values.size() != static_cast<std::size_t>(grid.rows) * grid.cols * grid.channels) {
    throw std::invalid_argument("feature grid buffer does not match its dims");
  }
  if (weights.rows != grid.rows * factor || weights.cols != grid.cols * factor) {
    throw std::invalid_argument(fmt::format("weights are {}x{}, expected {}x{} for factor {}", weights.rows,
                                            weights.cols, grid.rows * factor, grid.cols * factor, factor));
  }
  weights.validate();

  // Evaluated as g_c + sum_k w_k * (g_k - g_c) with g_c the parent cell. Equal
  // to sum_k w_k * g_k when the weights sum to one, and exact for constant
  // fields and one-hot center weights.
  FineGrid fine(weights.rows, weights.cols, grid.channels);
  const int C = grid.channels;
  const auto cell = [&](int r, int c) {
    return grid.values.data() + (static_cast<std::size_t>(r) * grid.cols + c) * C;
  };
  constexpr int kCenter = 4;
  for (int y = 0; y < fine.rows; ++y) {
    const int py = y / factor;
    for (int x = 0; x < fine.cols; ++x) {
      const int px = x / factor;
      double* out = &fine.at(y, x, 0);
      const double* center = cell(py, px);
      for (int k = 0; k < kNeighbors; ++k) {
        if (k == kCenter) continue;
        const double w = weights.at(y, x, k);
        const int r = std::clamp(py + neighbor_dy(k), 0, grid.rows - 1);
        const int c = std::clamp(px + neighbor_dx(k), 0, grid.cols - 1);
        const double* in = cell(r, c);
        for (int ch = 0; ch < C; ++ch) out[ch] += w * (in[ch] - center[ch]);
      }
      for (int ch = 0; ch < C; ++ch) out[ch] += center[ch];
    }
  }
  return fine;
}

ConvexWeights normalize_to_convex(int rows, int cols, const std::vector<double>& raw) {
  ConvexWeights out(rows, cols);
  if (raw.size() != out.values.size()) {
    throw std::invalid_argument(
        fmt::format("raw weights hold {} values, expected {}", raw.size(), out.values.size()));
  }
  for (std::size_t p = 0; p < raw.size(); p += kNeighbors) {
    double peak = raw[p];
    for (int k = 0; k < kNeighbors; ++k) {
      if (!std::isfinite(raw[p + k])) throw std::invalid_argument("raw weights must be finite");
      peak = std::max(peak, raw[p + k]);
    }
    double sum = 0.0;
    for (int k = 0; k < kNeighbors; ++k) {
      out.values[p + k] = std::exp(raw[p + k] - peak);
      sum += out.values[p + k];
    }
    for (int k = 0; k < kNeighbors; ++k) out.values[p + k] /= sum;
  }
  return out;
}

}  // namespace vview
