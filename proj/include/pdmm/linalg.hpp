// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pdmm/field.hpp"

namespace pdmm {

class SplitMix64;

/// Dense row-major matrix over a prime field.
class FieldMatrix {
 public:
  /// Zero matrix.
  FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols);
  /// Entries must number rows * cols and each lie in [0, p).
  FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols, std::vector<FieldElement> entries);

  static FieldMatrix identity(PrimeField field, std::size_t n);
  static FieldMatrix random(PrimeField field, std::size_t rows, std::size_t cols, SplitMix64& rng);
  /// Builds a matrix from signed integers, reducing each mod p.
  static FieldMatrix from_integers(PrimeField field, std::size_t rows, std::size_t cols,
                                   std::span<const std::int64_t> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const PrimeField& field() const noexcept { return field_; }
  std::span<const FieldElement> entries() const noexcept { return entries_; }
  std::span<const FieldElement> row(std::size_t r) const noexcept {
    return {entries_.data() + r * cols_, cols_};
  }

  FieldElement operator()(std::size_t r, std::size_t c) const noexcept { return entries_[r * cols_ + c]; }
  FieldElement& operator()(std::size_t r, std::size_t c) noexcept { return entries_[r * cols_ + c]; }

  bool is_zero() const noexcept;

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<FieldElement> entries_;
};

FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix scale(const FieldMatrix& a, FieldElement s);
/// a += s * b, in place.
void add_scaled(FieldMatrix& a, const FieldMatrix& b, FieldElement s);

/// M[i][j] = points[i]^exponents[j]. Exponents must be non-negative.
FieldMatrix vandermonde(std::span<const FieldElement> points, std::span<const std::int64_t> exponents,
                        const PrimeField& field);

FieldMatrix select_rows(const FieldMatrix& m, std::span<const std::size_t> rows);

/// X with M X = rhs by Gauss-Jordan elimination, first-nonzero pivoting. The
/// reduction of M is done once and applied to every column of rhs.
/// Throws Errc::singular_matrix when M is rank deficient.
FieldMatrix solve(const FieldMatrix& m, const FieldMatrix& rhs);

std::size_t rank(const FieldMatrix& m);
bool is_invertible(const FieldMatrix& m);

enum class SubmatrixOutcome { verified_all, verified_sample, found_singular };

struct SubmatrixOptions {
  std::uint64_t budget = 100'000;
  std::uint64_t seed = 0;
  /// Enumeration stops once this many singular subsets have been recorded.
  std::size_t witness_limit = 64;
};

struct SubmatrixCheck {
  SubmatrixOutcome outcome = SubmatrixOutcome::verified_all;
  /// C(N, T), saturated at UINT64_MAX.
  std::uint64_t total_subsets = 0;
  std::uint64_t checked = 0;
  bool exhaustive = true;
  /// Row subsets (ascending) whose T x T submatrix is singular, in the order found.
  std::vector<std::vector<std::size_t>> singular_rows;

  bool passed() const noexcept { return outcome != SubmatrixOutcome::found_singular; }
};

/// Checks every T-row submatrix of an N x T matrix when C(N, T) <= budget,
/// otherwise `budget` seeded pseudorandom row subsets.
SubmatrixCheck all_txt_submatrices_invertible(const FieldMatrix& m, std::size_t t,
                                              const SubmatrixOptions& options = {});

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) noexcept;

}  // namespace pdmm
