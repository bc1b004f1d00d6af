// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "pdmm/error.hpp"
#include "pdmm/linalg.hpp"
#include "pdmm/random.hpp"

namespace pdmm {
namespace {

using i64 = std::int64_t;

const PrimeField kF11(11);

std::vector<FieldElement> elems(std::initializer_list<std::uint64_t> v) {
  std::vector<FieldElement> out;
  for (auto x : v) out.push_back({x});
  return out;
}

std::vector<FieldElement> powers(const PrimeField& f, FieldElement base, std::size_t n) {
  std::vector<FieldElement> out;
  FieldElement x{1};
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(x);
    x = f.mul(x, base);
  }
  return out;
}

oracle::Grid to_grid(const FieldMatrix& m) {
  oracle::Grid g(m.rows(), std::vector<i64>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) g[r][c] = static_cast<i64>(m(r, c).value);
  }
  return g;
}

FieldMatrix of(const PrimeField& f, std::size_t rows, std::size_t cols, std::vector<i64> v) {
  return FieldMatrix::from_integers(f, rows, cols, v);
}

TEST(Vandermonde, Trivial) {
  const auto pts = elems({1});
  const std::vector<i64> e{0};
  EXPECT_EQ(vandermonde(pts, e, kF11), of(kF11, 1, 1, {1}));
}

TEST(Vandermonde, TenWorkerRows) {
  const auto rho = powers(kF11, {2}, 10);
  std::vector<i64> gamma(10);
  for (i64 i = 0; i < 10; ++i) gamma[static_cast<std::size_t>(i)] = i;
  const FieldMatrix v = vandermonde(rho, gamma, kF11);
  for (std::size_t c = 0; c < 10; ++c) EXPECT_EQ(v(0, c).value, 1u);
  const std::vector<std::uint64_t> second{1, 2, 4, 8, 5, 10, 9, 7, 3, 6};
  for (std::size_t c = 0; c < 10; ++c) EXPECT_EQ(v(1, c).value, second[c]);
  EXPECT_TRUE(is_invertible(v));
  EXPECT_NE(oracle::det(to_grid(v), 11), 0);

  const std::vector<i64> alpha_s{6, 7};
  const FieldMatrix vs = vandermonde(rho, alpha_s, kF11);
  EXPECT_EQ(vs(1, 0).value, 9u);
  EXPECT_EQ(vs(1, 1).value, 7u);
}

TEST(Vandermonde, EntriesMatchPowerOracle) {
  const PrimeField f(101);
  SplitMix64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FieldElement> pts;
    std::vector<i64> exps;
    for (int i = 0; i < 6; ++i) pts.push_back({rng.below(101)});
    for (int i = 0; i < 5; ++i) exps.push_back(static_cast<i64>(rng.below(300)));
    const FieldMatrix v = vandermonde(pts, exps, f);
    for (std::size_t r = 0; r < 6; ++r) {
      for (std::size_t c = 0; c < 5; ++c) {
        ASSERT_EQ(static_cast<i64>(v(r, c).value), oracle::power(static_cast<i64>(pts[r].value), exps[c], 101));
      }
    }
  }
}

TEST(Solve, IdentityReturnsRhs) {
  SplitMix64 rng(1);
  const FieldMatrix rhs = FieldMatrix::random(kF11, 4, 3, rng);
  EXPECT_EQ(solve(FieldMatrix::identity(kF11, 4), rhs), rhs);
}

TEST(Solve, AliasedMaskMatrixIsSingular) {
  const FieldMatrix m = of(kF11, 2, 2, {4, 4, 5, 5});
  EXPECT_EQ(oracle::det(to_grid(m), 11), 0);
  EXPECT_FALSE(is_invertible(m));
  EXPECT_EQ(rank(m), 1u);
  try {
    solve(m, FieldMatrix::identity(kF11, 2));
    FAIL() << "expected singular_matrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::singular_matrix);
  }
}

TEST(Solve, RoundTripOnRandomSystems) {
  const PrimeField f(97);
  SplitMix64 rng(7);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(6);
    const FieldMatrix m = FieldMatrix::random(f, n, n, rng);
    const FieldMatrix rhs = FieldMatrix::random(f, n, 1 + rng.below(4), rng);
    const bool invertible = oracle::det(to_grid(m), 97) != 0;
    ASSERT_EQ(is_invertible(m), invertible);
    if (!invertible) continue;
    ASSERT_EQ(m * solve(m, rhs), rhs);
    ++solved;
  }
  EXPECT_GT(solved, 150);
}

TEST(Rank, Fixtures) {
  EXPECT_EQ(rank(FieldMatrix(kF11, 3, 4)), 0u);
  EXPECT_EQ(rank(of(kF11, 2, 2, {1, 1, 1, 1})), 1u);
  const auto pts = elems({1, 2, 4});
  const std::vector<i64> e{0, 1, 2};
  EXPECT_TRUE(is_invertible(vandermonde(pts, e, kF11)));
  EXPECT_FALSE(is_invertible(FieldMatrix(kF11, 2, 3)));
}

TEST(Rank, DistinctPointVandermondeAlwaysInvertible) {
  const PrimeField f(251);
  SplitMix64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(9);
    std::vector<FieldElement> pts;
    while (pts.size() < n) {
      const FieldElement x{rng.below(251)};
      if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
    }
    std::vector<i64> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = static_cast<i64>(i);
    ASSERT_TRUE(is_invertible(vandermonde(pts, e, f)));
  }
}

TEST(Arithmetic, MatchesGridOracle) {
  const PrimeField f(13);
  SplitMix64 rng(5);
  const FieldMatrix a = FieldMatrix::random(f, 3, 4, rng);
  const FieldMatrix b = FieldMatrix::random(f, 4, 2, rng);
  EXPECT_EQ(to_grid(a * b), oracle::multiply(to_grid(a), to_grid(b), 13));
  FieldMatrix c = a;
  add_scaled(c, a, {12});
  EXPECT_TRUE(c.is_zero());
  EXPECT_EQ(scale(a, {2}), a + a);
}

TEST(FieldMatrixCtor, RejectsBadEntries) {
  EXPECT_THROW(FieldMatrix(kF11, 2, 2, elems({1, 2, 3})), Error);
  EXPECT_THROW(FieldMatrix(kF11, 1, 1, elems({11})), Error);
}

TEST(Submatrices, TenWorkerAlphaSExhaustive) {
  const auto rho = powers(kF11, {2}, 10);
  const std::vector<i64> alpha_s{6, 7};
  const SubmatrixCheck chk = all_txt_submatrices_invertible(vandermonde(rho, alpha_s, kF11), 2);
  EXPECT_EQ(chk.outcome, SubmatrixOutcome::verified_all);
  EXPECT_TRUE(chk.exhaustive);
  EXPECT_EQ(chk.total_subsets, 45u);
  EXPECT_EQ(chk.checked, 45u);
}

TEST(Submatrices, AliasedMaskVariantWitness) {
  const auto rho = powers(kF11, {2}, 10);
  const std::vector<i64> alpha_s{1, 6};
  const FieldMatrix v = vandermonde(rho, alpha_s, kF11);
  const std::vector<std::size_t> rows{2, 4};
  const FieldMatrix sub = select_rows(v, rows);
  EXPECT_EQ(sub, of(kF11, 2, 2, {4, 4, 5, 5}));
  const SubmatrixCheck pair = all_txt_submatrices_invertible(sub, 2);
  EXPECT_EQ(pair.outcome, SubmatrixOutcome::found_singular);
  ASSERT_EQ(pair.singular_rows.size(), 1u);
  EXPECT_EQ(pair.singular_rows[0], (std::vector<std::size_t>{0, 1}));

  const SubmatrixCheck full = all_txt_submatrices_invertible(v, 2);
  EXPECT_EQ(full.outcome, SubmatrixOutcome::found_singular);
  EXPECT_NE(std::find(full.singular_rows.begin(), full.singular_rows.end(), rows), full.singular_rows.end());
}

TEST(Submatrices, TOneMeansNonzeroEntries) {
  const FieldMatrix ok = of(kF11, 4, 1, {1, 3, 5, 10});
  EXPECT_EQ(all_txt_submatrices_invertible(ok, 1).outcome, SubmatrixOutcome::verified_all);
  const FieldMatrix bad = of(kF11, 4, 1, {1, 0, 5, 0});
  const SubmatrixCheck chk = all_txt_submatrices_invertible(bad, 1);
  EXPECT_EQ(chk.outcome, SubmatrixOutcome::found_singular);
  EXPECT_EQ(chk.singular_rows, (std::vector<std::vector<std::size_t>>{{1}, {3}}));
}

TEST(Submatrices, ZeroTIsVacuous) {
  EXPECT_EQ(all_txt_submatrices_invertible(FieldMatrix(kF11, 3, 0), 0).outcome, SubmatrixOutcome::verified_all);
}

TEST(Submatrices, ExhaustiveAgreesWithDeterminantOracle) {
  const PrimeField f(7);
  SplitMix64 rng(19);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t t = 1 + rng.below(3);
    const std::size_t n = t + rng.below(5);
    const FieldMatrix m = FieldMatrix::random(f, n, t, rng);
    std::vector<std::vector<std::size_t>> expected;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(t), true);
    do {
      std::vector<std::size_t> rows;
      for (std::size_t i = 0; i < n; ++i) {
        if (pick[i]) rows.push_back(i);
      }
      if (oracle::det(to_grid(select_rows(m, rows)), 7) == 0) expected.push_back(rows);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    SubmatrixOptions opt;
    opt.witness_limit = 1000;
    const SubmatrixCheck chk = all_txt_submatrices_invertible(m, t, opt);
    ASSERT_EQ(chk.singular_rows, expected) << "trial " << trial;
    ASSERT_EQ(chk.passed(), expected.empty());
  }
}

TEST(Submatrices, SampledModeWhenOverBudget) {
  const PrimeField f(1009);
  const auto rho = powers(f, f.generator(), 40);
  const std::vector<i64> e{0, 1, 2};
  SubmatrixOptions opt;
  opt.budget = 500;
  const SubmatrixCheck chk = all_txt_submatrices_invertible(vandermonde(rho, e, f), 3, opt);
  EXPECT_FALSE(chk.exhaustive);
  EXPECT_EQ(chk.outcome, SubmatrixOutcome::verified_sample);
  EXPECT_EQ(chk.checked, 500u);
  EXPECT_EQ(chk.total_subsets, 9880u);
}

TEST(Submatrices, DiagonalFactorizationForProgressions) {
  // Rows (w^a, w^(a+d)) factor as diag(w^a) * (1, w^d): singular iff w^d repeats.
  const FieldElement omega{2};
  const i64 q = 10;
  for (i64 a = 0; a < q; ++a) {
    for (i64 d = 1; d < q; ++d) {
      const std::vector<i64> cols{a, a + d};
      for (i64 w1 = 0; w1 < q; ++w1) {
        for (i64 w2 = 0; w2 < q; ++w2) {
          if (w1 == w2) continue;
          const std::vector<FieldElement> pts{kF11.pow(omega, static_cast<std::uint64_t>(w1)),
                                              kF11.pow(omega, static_cast<std::uint64_t>(w2))};
          const bool inv = is_invertible(vandermonde(pts, cols, kF11));
          const bool distinct = oracle::power(2, d * w1, 11) != oracle::power(2, d * w2, 11);
          ASSERT_EQ(inv, distinct) << a << " " << d << " " << w1 << " " << w2;
        }
      }
    }
  }
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial_saturating(10, 2), 45u);
  EXPECT_EQ(binomial_saturating(5, 0), 1u);
  EXPECT_EQ(binomial_saturating(3, 5), 0u);
  EXPECT_EQ(binomial_saturating(60, 30), 118264581564861424ULL);
  EXPECT_EQ(binomial_saturating(200, 100), UINT64_MAX);
}

}  // namespace
}  // namespace pdmm
