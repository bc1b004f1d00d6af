// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pdmm {

enum class Errc {
  parameter_range,
  parameter_order,
  not_coprime,
  search_exhausted,
  order_not_dividing,
  division_by_zero,
  singular_matrix,
  dimension_mismatch,
  count_mismatch,
  invalid_table,
  unsupported_strategy,
  instantiation_failed,
  budget_exceeded,
  overflow,
  parse_error,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI exit-status mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(Errc::overflow, "64-bit multiplication overflow");
  }
  return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(Errc::overflow, "64-bit addition overflow");
  }
  return out;
}

}  // namespace pdmm
