// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdmm/random.hpp"

namespace pdmm {

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
  // Reject the low (2^64 mod bound) values so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t v = next();
    if (v >= threshold) return v % bound;
  }
}

}  // namespace pdmm
