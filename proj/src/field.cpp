// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdmm/field.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "pdmm/error.hpp"

namespace pdmm {
namespace {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

constexpr u64 kMaxModulus = u64{1} << 63;

u64 mulmod(u64 a, u64 b, u64 m) {
  if (m <= 0xffffffffULL) return a * b % m;
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 e, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}

}  // namespace

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::parameter_range: return "parameter-range";
    case Errc::parameter_order: return "parameter-order";
    case Errc::not_coprime: return "x-not-coprime";
    case Errc::search_exhausted: return "search-exhausted";
    case Errc::order_not_dividing: return "order-not-dividing";
    case Errc::division_by_zero: return "division-by-zero";
    case Errc::singular_matrix: return "singular-matrix";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::count_mismatch: return "count-mismatch";
    case Errc::invalid_table: return "invalid-table";
    case Errc::unsupported_strategy: return "unsupported-strategy";
    case Errc::instantiation_failed: return "instantiation-failed";
    case Errc::budget_exceeded: return "budget-exceeded";
    case Errc::overflow: return "overflow";
    case Errc::parse_error: return "parse-error";
  }
  return "unknown";
}

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  constexpr std::array<u64, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 b : bases) {
    if (n % b == 0) return n == b;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : bases) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 f = 2; f <= n / f; f += (f == 2 ? 1 : 2)) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

u64 next_prime(u64 n) {
  if (n <= 2) return 2;
  for (u64 c = n | 1; c < kMaxModulus; c += 2) {
    if (is_prime(c)) return c;
  }
  throw Error(Errc::search_exhausted, "no prime below 2^63 at or above " + std::to_string(n));
}

PrimeField::PrimeField(u64 p) : p_(p), g_(1) {
  if (p >= kMaxModulus) {
    throw Error(Errc::parameter_range, "modulus must be below 2^63");
  }
  if (!is_prime(p)) {
    throw Error(Errc::parameter_range, std::to_string(p) + " is not prime");
  }
  const auto factors = prime_factors(p - 1);
  for (u64 g = 1; g < p; ++g) {
    bool primitive = true;
    for (u64 u : factors) {
      if (powmod(g, (p - 1) / u, p) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g_ = g;
      return;
    }
  }
}

FieldElement PrimeField::element(std::int64_t v) const noexcept {
  const auto m = static_cast<std::int64_t>(p_);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return {static_cast<u64>(r)};
}

FieldElement PrimeField::pow(FieldElement a, u64 e) const noexcept { return {powmod(a.value, e, p_)}; }

FieldElement PrimeField::inv(FieldElement a) const {
  if (a.value % p_ == 0) {
    throw Error(Errc::division_by_zero, "inverse of zero in F_" + std::to_string(p_));
  }
  return pow(a, p_ - 2);
}

u64 PrimeField::order(FieldElement a) const {
  if (a.value % p_ == 0) {
    throw Error(Errc::division_by_zero, "zero has no multiplicative order");
  }
  u64 ord = p_ - 1;
  for (u64 u : prime_factors(p_ - 1)) {
    while (ord % u == 0 && powmod(a.value, ord / u, p_) == 1) ord /= u;
  }
  return ord;
}

PrimeField find_field(u64 q, u64 min_p) {
  if (q == 0) {
    throw Error(Errc::parameter_range, "root order q must be positive");
  }
  const u64 lower = std::max(min_p, q + 1);
  // first candidate >= lower with candidate = 1 (mod q)
  u64 candidate = ((lower - 1 + q - 1) / q) * q + 1;
  for (; candidate < kMaxModulus; candidate += q) {
    if (is_prime(candidate)) return PrimeField(candidate);
    if (candidate > kMaxModulus - q) break;
  }
  throw Error(Errc::search_exhausted, "no prime p < 2^63 with " + std::to_string(q) + " | p-1");
}

FieldElement element_of_order(const PrimeField& field, u64 q) {
  const u64 p = field.modulus();
  if (q == 0 || (p - 1) % q != 0) {
    throw Error(Errc::order_not_dividing,
                std::to_string(q) + " does not divide " + std::to_string(p) + " - 1");
  }
  return field.pow(field.generator(), (p - 1) / q);
}

}  // namespace pdmm
