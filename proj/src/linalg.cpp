// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdmm/linalg.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "pdmm/error.hpp"
#include "pdmm/random.hpp"

namespace pdmm {
namespace {

void require_same_shape(const FieldMatrix& a, const FieldMatrix& b, const char* op) {
  if (!(a.field() == b.field()) || a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::dimension_mismatch, std::string(op) + ": operands differ in shape or field");
  }
}

// Row-reduces `work` (n x cols) in place over `f`; returns the rank. With
// `stop_on_deficient`, returns early as soon as a pivot column has no pivot.
std::size_t reduce(std::vector<FieldElement>& work, std::size_t n, std::size_t cols,
                   std::size_t pivot_cols, const PrimeField& f, bool stop_on_deficient) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < pivot_cols && rank < n; ++c) {
    std::size_t pivot = rank;
    while (pivot < n && work[pivot * cols + c].value == 0) ++pivot;
    if (pivot == n) {
      if (stop_on_deficient) return rank;
      continue;
    }
    if (pivot != rank) {
      std::swap_ranges(work.begin() + static_cast<std::ptrdiff_t>(pivot * cols),
                       work.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * cols),
                       work.begin() + static_cast<std::ptrdiff_t>(rank * cols));
    }
    const FieldElement inv = f.inv(work[rank * cols + c]);
    for (std::size_t k = c; k < cols; ++k) work[rank * cols + k] = f.mul(work[rank * cols + k], inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == rank) continue;
      const FieldElement factor = work[r * cols + c];
      if (factor.value == 0) continue;
      for (std::size_t k = c; k < cols; ++k) {
        work[r * cols + k] = f.sub(work[r * cols + k], f.mul(factor, work[rank * cols + k]));
      }
    }
    ++rank;
  }
  return rank;
}

// Inverse-free elimination: rows are combined as pivot * row - factor * pivot_row.
bool small_invertible(const FieldMatrix& m, std::span<const std::size_t> rows,
                      std::vector<FieldElement>& scratch) {
  const PrimeField& f = m.field();
  const std::size_t t = rows.size();
  scratch.resize(t * t);
  for (std::size_t i = 0; i < t; ++i) {
    const auto src = m.row(rows[i]);
    std::copy(src.begin(), src.end(), scratch.begin() + static_cast<std::ptrdiff_t>(i * t));
  }
  for (std::size_t c = 0; c < t; ++c) {
    std::size_t pivot = c;
    while (pivot < t && scratch[pivot * t + c].value == 0) ++pivot;
    if (pivot == t) return false;
    if (pivot != c) {
      for (std::size_t k = c; k < t; ++k) std::swap(scratch[pivot * t + k], scratch[c * t + k]);
    }
    const FieldElement pv = scratch[c * t + c];
    for (std::size_t r = c + 1; r < t; ++r) {
      const FieldElement factor = scratch[r * t + c];
      if (factor.value == 0) continue;
      for (std::size_t k = c; k < t; ++k) {
        scratch[r * t + k] = f.sub(f.mul(pv, scratch[r * t + k]), f.mul(factor, scratch[c * t + k]));
      }
    }
  }
  return true;
}

// Lexicographic walk over row subsets. basis row d is the d-th chosen row
// reduced against the earlier ones and scaled to a unit pivot, so a prefix is
// reduced once for all of its completions.
class SubsetWalker {
 public:
  SubsetWalker(const FieldMatrix& m, std::size_t t, std::size_t limit, SubmatrixCheck& result)
      : m_(m), f_(m.field()), n_(m.rows()), t_(t), limit_(limit), result_(result),
        basis_(t * t), leaf_(t), pivot_(t), rows_(t) {}

  void run() { walk(0, 0, false); }

 private:
  std::size_t reduce(std::size_t r, std::size_t d, FieldElement* out) const {
    const auto src = m_.row(r);
    std::copy(src.begin(), src.end(), out);
    for (std::size_t k = 0; k < d; ++k) {
      const FieldElement factor = out[pivot_[k]];
      if (factor.value == 0) continue;
      const FieldElement* b = &basis_[k * t_];
      for (std::size_t j = 0; j < t_; ++j) {
        if (b[j].value != 0) out[j] = f_.sub(out[j], f_.mul(factor, b[j]));
      }
    }
    for (std::size_t j = 0; j < t_; ++j) {
      if (out[j].value != 0) return j;
    }
    return t_;
  }

  void walk(std::size_t d, std::size_t start, bool deficient) {
    for (std::size_t r = start; r + (t_ - d) <= n_ && !stop_; ++r) {
      rows_[d] = r;
      if (d + 1 == t_) {
        ++result_.checked;
        if (deficient || reduce(r, d, leaf_.data()) == t_) {
          result_.singular_rows.push_back(rows_);
          if (result_.singular_rows.size() >= limit_) stop_ = true;
        }
        continue;
      }
      bool def = deficient;
      if (!def) {
        FieldElement* row = &basis_[d * t_];
        const std::size_t pc = reduce(r, d, row);
        if (pc == t_) {
          def = true;
        } else {
          const FieldElement inv = f_.inv(row[pc]);
          for (std::size_t j = 0; j < t_; ++j) row[j] = f_.mul(row[j], inv);
          pivot_[d] = pc;
        }
      }
      walk(d + 1, r + 1, def);
    }
  }

  const FieldMatrix& m_;
  const PrimeField& f_;
  std::size_t n_;
  std::size_t t_;
  std::size_t limit_;
  SubmatrixCheck& result_;
  std::vector<FieldElement> basis_;
  std::vector<FieldElement> leaf_;
  std::vector<std::size_t> pivot_;
  std::vector<std::size_t> rows_;
  bool stop_ = false;
};

}  // namespace

FieldMatrix::FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols) {}

FieldMatrix::FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols,
                         std::vector<FieldElement> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw Error(Errc::dimension_mismatch, "entry count does not match rows * cols");
  }
  for (FieldElement e : entries_) {
    if (e.value >= field_.modulus()) throw Error(Errc::parameter_range, "entry outside [0, p)");
  }
}

FieldMatrix FieldMatrix::identity(PrimeField field, std::size_t n) {
  FieldMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = {1 % field.modulus()};
  return m;
}

FieldMatrix FieldMatrix::random(PrimeField field, std::size_t rows, std::size_t cols, SplitMix64& rng) {
  FieldMatrix m(field, rows, cols);
  for (auto& e : m.entries_) e = {rng.below(field.modulus())};
  return m;
}

FieldMatrix FieldMatrix::from_integers(PrimeField field, std::size_t rows, std::size_t cols,
                                       std::span<const std::int64_t> values) {
  if (values.size() != rows * cols) {
    throw Error(Errc::dimension_mismatch, "value count does not match rows * cols");
  }
  FieldMatrix m(field, rows, cols);
  for (std::size_t k = 0; k < values.size(); ++k) m.entries_[k] = field.element(values[k]);
  return m;
}

bool FieldMatrix::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](FieldElement e) { return e.value == 0; });
}

FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) {
  FieldMatrix out = a;
  add_scaled(out, b, {1});
  return out;
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
  if (!(a.field() == b.field()) || a.cols() != b.rows()) {
    throw Error(Errc::dimension_mismatch, "product: inner dimensions " + std::to_string(a.cols()) +
                                              " and " + std::to_string(b.rows()) + " differ");
  }
  const PrimeField& f = a.field();
  FieldMatrix out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const FieldElement aik = a(i, k);
      if (aik.value == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
    }
  }
  return out;
}

FieldMatrix scale(const FieldMatrix& a, FieldElement s) {
  FieldMatrix out(a.field(), a.rows(), a.cols());
  add_scaled(out, a, s);
  return out;
}

void add_scaled(FieldMatrix& a, const FieldMatrix& b, FieldElement s) {
  require_same_shape(a, b, "add");
  const PrimeField& f = a.field();
  if (s.value == 0) return;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = f.add(a(r, c), f.mul(s, b(r, c)));
  }
}

FieldMatrix vandermonde(std::span<const FieldElement> points, std::span<const std::int64_t> exponents,
                        const PrimeField& field) {
  FieldMatrix m(field, points.size(), exponents.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < exponents.size(); ++j) {
      if (exponents[j] < 0) throw Error(Errc::parameter_range, "negative exponent in vandermonde");
      m(i, j) = field.pow(points[i], static_cast<std::uint64_t>(exponents[j]));
    }
  }
  return m;
}

FieldMatrix select_rows(const FieldMatrix& m, std::span<const std::size_t> rows) {
  FieldMatrix out(m.field(), rows.size(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= m.rows()) throw Error(Errc::dimension_mismatch, "row index out of range");
    for (std::size_t c = 0; c < m.cols(); ++c) out(i, c) = m(rows[i], c);
  }
  return out;
}

FieldMatrix solve(const FieldMatrix& m, const FieldMatrix& rhs) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(Errc::dimension_mismatch, "solve: matrix is not square");
  if (rhs.rows() != n || !(rhs.field() == m.field())) {
    throw Error(Errc::dimension_mismatch, "solve: right-hand side has the wrong number of rows");
  }
  const std::size_t width = n + rhs.cols();
  std::vector<FieldElement> work(n * width);
  for (std::size_t r = 0; r < n; ++r) {
    std::copy(m.row(r).begin(), m.row(r).end(), work.begin() + static_cast<std::ptrdiff_t>(r * width));
    std::copy(rhs.row(r).begin(), rhs.row(r).end(),
              work.begin() + static_cast<std::ptrdiff_t>(r * width + n));
  }
  const std::size_t rk = reduce(work, n, width, n, m.field(), true);
  if (rk < n) {
    throw Error(Errc::singular_matrix, "rank " + std::to_string(rk) + " < " + std::to_string(n));
  }
  FieldMatrix out(m.field(), n, rhs.cols());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < rhs.cols(); ++c) out(r, c) = work[r * width + n + c];
  }
  return out;
}

std::size_t rank(const FieldMatrix& m) {
  std::vector<FieldElement> work(m.entries().begin(), m.entries().end());
  return reduce(work, m.rows(), m.cols(), m.cols(), m.field(), false);
}

bool is_invertible(const FieldMatrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  __extension__ unsigned __int128 acc = 1;
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > cap) return cap;
  }
  return static_cast<std::uint64_t>(acc);
}

SubmatrixCheck all_txt_submatrices_invertible(const FieldMatrix& m, std::size_t t,
                                              const SubmatrixOptions& options) {
  if (m.cols() != t) {
    throw Error(Errc::dimension_mismatch,
                "submatrix check expects exactly " + std::to_string(t) + " columns");
  }
  SubmatrixCheck result;
  const std::size_t n = m.rows();
  result.total_subsets = binomial_saturating(n, t);
  if (t == 0 || t > n) return result;

  const std::size_t limit = std::max<std::size_t>(options.witness_limit, 1);
  std::vector<FieldElement> scratch;
  const auto test = [&](const std::vector<std::size_t>& rows) {
    ++result.checked;
    if (!small_invertible(m, rows, scratch)) result.singular_rows.push_back(rows);
    return result.singular_rows.size() < limit;
  };

  if (result.total_subsets <= options.budget) {
    SubsetWalker(m, t, limit, result).run();
  } else {
    result.exhaustive = false;
    SplitMix64 rng(options.seed);
    std::vector<std::size_t> pick;
    for (std::uint64_t trial = 0; trial < options.budget; ++trial) {
      // Floyd's algorithm for a uniform t-subset of [0, n)
      pick.clear();
      for (std::size_t j = n - t; j < n; ++j) {
        const auto r = static_cast<std::size_t>(rng.below(j + 1));
        pick.push_back(std::find(pick.begin(), pick.end(), r) == pick.end() ? r : j);
      }
      std::sort(pick.begin(), pick.end());
      if (!test(pick)) break;
    }
  }
  if (!result.singular_rows.empty()) {
    result.outcome = SubmatrixOutcome::found_singular;
  } else {
    result.outcome = result.exhaustive ? SubmatrixOutcome::verified_all : SubmatrixOutcome::verified_sample;
  }
  return result;
}

}  // namespace pdmm
