// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>

namespace vview {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `vview` tool. Returns 0 on success, 1 on validation or
/// runtime failure, 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vview
