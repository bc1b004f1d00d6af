// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace pdmm {

/// An element of a prime field. The owning field is carried by context.
struct FieldElement {
  std::uint64_t value = 0;

  friend constexpr auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

/// Deterministic Miller-Rabin; exact for the whole 64-bit range.
bool is_prime(std::uint64_t n) noexcept;

/// Distinct prime factors of n in ascending order (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Smallest prime strictly greater than or equal to n.
std::uint64_t next_prime(std::uint64_t n);

/// The field F_p together with the smallest primitive element.
///
/// Moduli are restricted to p < 2^63 so that a sum of two reduced values never
/// wraps around.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const noexcept { return p_; }
  FieldElement generator() const noexcept { return {g_}; }

  /// Reduces an arbitrary signed integer into [0, p).
  FieldElement element(std::int64_t v) const noexcept;

  FieldElement add(FieldElement a, FieldElement b) const noexcept {
    const std::uint64_t s = a.value + b.value;
    return {s >= p_ ? s - p_ : s};
  }
  FieldElement sub(FieldElement a, FieldElement b) const noexcept {
    return {a.value >= b.value ? a.value - b.value : a.value + p_ - b.value};
  }
  FieldElement mul(FieldElement a, FieldElement b) const noexcept {
    if (p_ <= 0xffffffffULL) return {a.value * b.value % p_};
    __extension__ typedef unsigned __int128 u128;
    return {static_cast<std::uint64_t>(static_cast<u128>(a.value) * b.value % p_)};
  }
  FieldElement neg(FieldElement a) const noexcept { return {a.value == 0 ? 0 : p_ - a.value}; }
  FieldElement pow(FieldElement a, std::uint64_t e) const noexcept;
  /// Throws Errc::division_by_zero on zero.
  FieldElement inv(FieldElement a) const;

  /// Smallest d >= 1 with a^d = 1. Requires a != 0.
  std::uint64_t order(FieldElement a) const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
  std::uint64_t g_;
};

/// Smallest prime p >= max(min_p, q + 1) with q | p - 1.
PrimeField find_field(std::uint64_t q, std::uint64_t min_p = 0);

/// g^((p-1)/q) for the field's generator g; an element of order exactly q.
FieldElement element_of_order(const PrimeField& field, std::uint64_t q);

}  // namespace pdmm
