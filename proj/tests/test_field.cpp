// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pdmm/error.hpp"
#include "pdmm/field.hpp"
#include "pdmm/random.hpp"

namespace pdmm {
namespace {

TEST(IsPrime, SmallValues) {
  EXPECT_TRUE(is_prime(11));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(103));
  EXPECT_FALSE(is_prime(0));
  EXPECT_TRUE(is_prime(2));
}

TEST(IsPrime, AgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 20000; ++n) {
    ASSERT_EQ(is_prime(n), oracle::is_prime(static_cast<std::int64_t>(n))) << n;
  }
}

TEST(IsPrime, LargeKnownValues) {
  EXPECT_TRUE(is_prime(2305843009213693951ULL));   // 2^61 - 1
  EXPECT_FALSE(is_prime(3215031751ULL));           // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_FALSE(is_prime(3825123056546413051ULL));  // strong pseudoprime to bases up to 23
  EXPECT_TRUE(is_prime(18446744073709551557ULL));  // largest 64-bit prime
}

TEST(FindField, Fixtures) {
  EXPECT_EQ(find_field(10).modulus(), 11u);
  EXPECT_EQ(find_field(1).modulus(), 2u);
  EXPECT_EQ(find_field(34).modulus(), 103u);
  EXPECT_EQ(find_field(10, 50).modulus(), 61u);
}

TEST(FindField, FieldListForQ10) {
  std::vector<std::uint64_t> found;
  std::uint64_t min_p = 0;
  for (int i = 0; i < 8; ++i) {
    found.push_back(find_field(10, min_p).modulus());
    min_p = found.back() + 1;
  }
  // Prime members of "11, 31, 41, 61, 71, 81, 101, 121, 131, 151, 181, 191".
  EXPECT_EQ(found, (std::vector<std::uint64_t>{11, 31, 41, 61, 71, 101, 131, 151}));
}

TEST(FindField, ZeroIsRejected) {
  try {
    find_field(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::parameter_range);
  }
}

TEST(ElementOfOrder, Fixtures) {
  EXPECT_EQ(element_of_order(PrimeField(11), 10).value, 2u);
  EXPECT_EQ(element_of_order(PrimeField(11), 1).value, 1u);
  EXPECT_EQ(element_of_order(PrimeField(2), 1).value, 1u);
  const PrimeField f(103);
  const FieldElement w = element_of_order(f, 34);
  EXPECT_EQ(f.pow(w, 34).value, 1u);
  EXPECT_NE(f.pow(w, 17).value, 1u);
  EXPECT_NE(f.pow(w, 2).value, 1u);
}

TEST(ElementOfOrder, RejectsNonDivisor) {
  try {
    element_of_order(PrimeField(11), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::order_not_dividing);
  }
}

TEST(ElementOfOrder, ExactOrderAcrossFields) {
  for (std::uint64_t q = 1; q <= 120; ++q) {
    const PrimeField f = find_field(q);
    ASSERT_EQ((f.modulus() - 1) % q, 0u);
    const FieldElement w = element_of_order(f, q);
    EXPECT_EQ(oracle::order(static_cast<std::int64_t>(w.value), static_cast<std::int64_t>(f.modulus())),
              static_cast<std::int64_t>(q))
        << "q=" << q;
    for (std::uint64_t u : prime_factors(q)) EXPECT_NE(f.pow(w, q / u).value, 1u);
  }
}

TEST(PrimeField, GeneratorIsPrimitive) {
  for (std::uint64_t p : {2u, 3u, 11u, 53u, 103u, 7919u}) {
    const PrimeField f(p);
    EXPECT_EQ(oracle::order(static_cast<std::int64_t>(f.generator().value), static_cast<std::int64_t>(p)),
              static_cast<std::int64_t>(p - 1));
  }
}

TEST(PrimeField, RejectsComposite) {
  EXPECT_THROW(PrimeField(12), Error);
  EXPECT_THROW(PrimeField(1), Error);
}

TEST(PrimeField, ArithmeticFixtures) {
  const PrimeField f(11);
  EXPECT_EQ(f.inv({2}).value, 6u);
  EXPECT_EQ(f.pow({2}, 10).value, 1u);
  EXPECT_EQ(f.add({7}, {0}).value, 7u);
  EXPECT_EQ(f.sub({3}, {5}).value, 9u);
  EXPECT_EQ(f.neg({0}).value, 0u);
  EXPECT_EQ(f.element(-1).value, 10u);
  EXPECT_EQ(f.order({2}), 10u);
  try {
    f.inv({0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::division_by_zero);
  }
}

TEST(PrimeField, FermatAndInverseInvolution) {
  for (std::uint64_t p : {11ULL, 53ULL, 1000003ULL, 4294967311ULL, 2305843009213693951ULL}) {
    const PrimeField f(p);
    SplitMix64 rng(p);
    for (int i = 0; i < 200; ++i) {
      const FieldElement a{rng.below(p - 1) + 1};
      ASSERT_EQ(f.pow(a, p - 1).value, 1u);
      ASSERT_EQ(f.inv(f.inv(a)), a);
      ASSERT_EQ(f.mul(f.inv(a), a).value, 1u);
    }
  }
}

TEST(PrimeField, MultiplicationMatchesWideProduct) {
  // Covers both the 32-bit and the 128-bit multiplication paths.
  for (std::uint64_t p : {4294967291ULL, 4294967311ULL, 9223372036854775783ULL}) {
    const PrimeField f(p);
    SplitMix64 rng(7);
    for (int i = 0; i < 1000; ++i) {
      const std::uint64_t a = rng.below(p), b = rng.below(p);
      __extension__ typedef unsigned __int128 u128;
      ASSERT_EQ(f.mul({a}, {b}).value, static_cast<std::uint64_t>(static_cast<u128>(a) * b % p));
    }
  }
}

TEST(SplitMix64, ReferenceSequence) {
  // First outputs for seed 0 of the reference implementation.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.next(), 0x06c45d188009454fULL);
}

TEST(SplitMix64, BelowStaysInRange) {
  SplitMix64 rng(42);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
}

}  // namespace
}  // namespace pdmm
