// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vview {

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_passed() const;
};

/// Oracle-equivalence suite on scenes derived from `seed`: renderer, splat,
/// fusion and upsample against their references, and render determinism
/// across 1, 2 and 8 workers.
VerifyReport run_verification(std::uint64_t seed);

}  // namespace vview
