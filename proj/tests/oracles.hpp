// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

// Deliberately naive reference implementations used as test oracles. None of
// them shares code with the library.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using Grid = std::vector<std::vector<i64>>;

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline i64 reduce(i64 a, i64 m) { return ((a % m) + m) % m; }

inline i64 power(i64 b, i64 e, i64 p) {
  i64 out = 1 % p;
  b = reduce(b, p);
  for (i64 i = 0; i < e; ++i) out = out * b % p;
  return out;
}

inline i64 order(i64 a, i64 p) {
  i64 x = reduce(a, p);
  for (i64 d = 1; d < p; ++d) {
    if (x == 1) return d;
    x = x * reduce(a, p) % p;
  }
  return 0;
}

/// Distinct entries of the addition table listed cell by cell.
inline i64 count_table(const std::vector<i64>& alpha, const std::vector<i64>& beta, std::optional<i64> q) {
  std::set<i64> cells;
  for (i64 a : alpha) {
    for (i64 b : beta) cells.insert(q ? reduce(a + b, *q) : a + b);
  }
  return static_cast<i64>(cells.size());
}

/// Leibniz expansion over all permutations.
inline i64 det(const Grid& m, i64 p) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  i64 total = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    i64 term = 1;
    for (std::size_t i = 0; i < n; ++i) term = term * reduce(m[i][perm[i]], p) % p;
    total = reduce(total + (inversions % 2 ? -term : term), p);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline Grid multiply(const Grid& a, const Grid& b, i64 p) {
  Grid out(a.size(), std::vector<i64>(b.front().size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.front().size(); ++j) {
      for (std::size_t k = 0; k < b.size(); ++k) out[i][j] = (out[i][j] + a[i][k] * b[k][j]) % p;
    }
  }
  return out;
}

inline i64 gcd(i64 a, i64 b) { return b == 0 ? (a < 0 ? -a : a) : gcd(b, a % b); }

}  // namespace oracle
