// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace vview {

/// Worker count used when callers pass 0.
inline int default_workers() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Splits [0, count) into at most `workers` contiguous chunks and runs
/// fn(begin, end) on each. The calling thread takes the first chunk. The
/// first exception thrown by any chunk is rethrown after all chunks finish.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  if (count == 0) return;
  if (workers <= 0) workers = default_workers();
  const std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
  if (chunks <= 1) {
    fn(std::size_t{0}, count);
    return;
  }
  const std::size_t step = (count + chunks - 1) / chunks;
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> threads;
  threads.reserve(chunks - 1);
  for (std::size_t c = 1; c < chunks; ++c) {
    const std::size_t begin = std::min(count, c * step);
    const std::size_t end = std::min(count, begin + step);
    threads.emplace_back([&fn, &errors, c, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  try {
    fn(std::size_t{0}, std::min(count, step));
  } catch (...) {
    errors[0] = std::current_exception();
  }
  for (auto& t : threads) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace vview
