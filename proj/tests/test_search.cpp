// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pdmm/degrees.hpp"
#include "pdmm/search.hpp"

namespace pdmm {
namespace {

using i64 = std::int64_t;

i64 recount(const SchemeChoice& c) {
  const DegreeVectors dv = c.construction().table;
  return oracle::count_table(dv.alpha(), dv.beta(), dv.modulus());
}

TEST(BestGaspR, Fixtures) {
  const SchemeChoice a = best_gasp_r(4, 4, 4);
  EXPECT_EQ(a.r, 2);
  EXPECT_EQ(a.n_workers, 36);
  EXPECT_EQ(best_gasp_r(7, 7, 6).n_workers, 91);
  EXPECT_EQ(best_gasp_r(7, 7, 6).r, 3);
  EXPECT_EQ(best_gasp_r(3, 3, 3).n_workers, 22);
  EXPECT_EQ(best_gasp_r(2, 2, 2).n_workers, 11);
  EXPECT_EQ(best_gasp_r(2, 2, 2).r, 1);
}

TEST(BestGaspRs, Fixtures) {
  const SchemeChoice g = best_gasp_rs(7, 7, 6);
  EXPECT_EQ(g.r, 2);
  EXPECT_EQ(g.s, 3);
  EXPECT_EQ(g.n_workers, 89);
}

TEST(BestDogRs, Fixtures) {
  const SchemeChoice d = best_dog_rs(7, 7, 6);
  EXPECT_EQ(d.r, 1);
  EXPECT_EQ(d.s, 3);
  EXPECT_EQ(d.n_workers, 88);
  EXPECT_EQ(best_dog_rs(3, 3, 3).n_workers, 23);
}

TEST(CatxChoice, Fixtures) {
  EXPECT_EQ(catx_choice(2, 2, 2)->n_workers, 10);
  EXPECT_EQ(catx_choice(7, 7, 6)->n_workers, 89);
  EXPECT_EQ(catx_choice(20, 20, 2)->n_workers, 442);
  EXPECT_EQ(catx_choice(20, 20, 2)->x, 1);
  EXPECT_FALSE(catx_choice(3, 3, 4));
  EXPECT_EQ(catx_choice(2, 5, 2)->n_workers, catx_choice(5, 2, 2)->n_workers);
  EXPECT_TRUE(catx_choice(2, 5, 2)->transposed);
}

TEST(BestGaspR, ExhaustiveMinimumSmallestROnTies) {
  for (i64 K = 2; K <= 9; ++K) {
    for (i64 L = 2; L <= K; ++L) {
      for (i64 T = 2; T <= 9; ++T) {
        i64 best = -1, best_r = 0;
        for (i64 r = 1; r <= std::min(K, T); ++r) {
          const i64 n = count_unique(construct_gasp_r(K, L, T, r));
          if (best < 0 || n < best) best = n, best_r = r;
        }
        const SchemeChoice c = best_gasp_r(K, L, T);
        ASSERT_EQ(c.n_workers, best);
        ASSERT_EQ(c.r, best_r);
      }
    }
  }
}

TEST(BestScheme, Fixtures) {
  const SweepRecord a = best_scheme(2, 2, 2);
  EXPECT_EQ(a.winner, SchemeFamily::catx);
  EXPECT_EQ(a.winner_n(), 10);
  EXPECT_EQ(a.margin, 1);
  EXPECT_EQ(a.gasp_r.n_workers, 11);
  EXPECT_TRUE(a.polegap_absent);

  const SweepRecord b = best_scheme(7, 7, 6);
  EXPECT_EQ(b.winner, SchemeFamily::dog_rs);
  EXPECT_EQ(b.margin, 1);
}

TEST(BestScheme, ThreeThreeThreeTie) {
  // GASP_r, GASP_rs (s = T) and CAT_x all reach 22; the fixed tie order picks CATX.
  const SweepRecord r = best_scheme(3, 3, 3);
  EXPECT_EQ(r.gasp_r.n_workers, 22);
  EXPECT_EQ(r.gasp_rs.n_workers, 22);
  EXPECT_EQ(r.catx->n_workers, 22);
  EXPECT_EQ(r.dog_rs.n_workers, 23);
  EXPECT_EQ(r.winner_n(), 22);
  EXPECT_EQ(r.winner, SchemeFamily::catx);
  EXPECT_EQ(r.margin, 0);
  EXPECT_EQ(r.improvement_dog_rs, (Ratio{-1, 23}));
  EXPECT_NEAR(r.improvement_dog_rs.percent(), -4.3, 0.05);
  EXPECT_EQ(r.saving_dog_rs, (Ratio{-1, 22}));
}

TEST(BestScheme, Invariants) {
  for (i64 K = 2; K <= 8; ++K) {
    for (i64 L = 2; L <= 8; ++L) {
      for (i64 T = 2; T <= 8; ++T) {
        const SweepRecord rec = best_scheme(K, L, T);
        ASSERT_LE(rec.gasp_rs.n_workers, rec.gasp_r.n_workers);
        std::vector<std::pair<i64, SchemeFamily>> all;
        for (SchemeFamily f : {SchemeFamily::catx, SchemeFamily::dog_rs, SchemeFamily::gasp_rs, SchemeFamily::gasp_r}) {
          if (f == SchemeFamily::catx && !rec.catx) continue;
          const SchemeChoice& c = rec.choice(f);
          ASSERT_EQ(c.n_workers, recount(c)) << scheme_family_token(f) << " " << K << L << T;
          all.push_back({c.n_workers, f});
        }
        std::sort(all.begin(), all.end());
        ASSERT_EQ(rec.winner, all[0].second);
        ASSERT_EQ(rec.margin, all[1].first - all[0].first);
        const SweepRecord mirrored = best_scheme(L, K, T);
        ASSERT_EQ(mirrored.winner_n(), rec.winner_n());
      }
    }
  }
}

TEST(Sweep, SinglePointEqualsBestScheme) {
  const auto recs = sweep({7, 7, 1}, {7, 7, 1}, {6, 6, 1}, SweepMode::full, 2);
  ASSERT_EQ(recs.size(), 1u);
  const SweepRecord direct = best_scheme(7, 7, 6);
  EXPECT_EQ(recs[0].winner, direct.winner);
  EXPECT_EQ(recs[0].margin, direct.margin);
  EXPECT_EQ(recs[0].dog_rs.n_workers, direct.dog_rs.n_workers);
}

TEST(Sweep, OrderAndDeterminism) {
  const auto a = sweep({2, 6, 1}, {0, 0, 1}, {2, 5, 1}, SweepMode::k_equals_l, 1);
  const auto b = sweep({2, 6, 1}, {0, 0, 1}, {2, 5, 1}, SweepMode::k_equals_l, 8);
  ASSERT_EQ(a.size(), 20u);
  ASSERT_EQ(b.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].K, a[i].L);
    EXPECT_EQ(a[i].K, b[i].K);
    EXPECT_EQ(a[i].T, b[i].T);
    EXPECT_EQ(a[i].winner, b[i].winner);
    EXPECT_EQ(a[i].winner_n(), b[i].winner_n());
    if (i > 0) {
      EXPECT_TRUE(std::tie(a[i - 1].K, a[i - 1].T) < std::tie(a[i].K, a[i].T));
    }
  }
  const auto full = sweep({2, 3, 1}, {2, 3, 1}, {2, 3, 1}, SweepMode::full, 3);
  EXPECT_EQ(full.size(), 8u);
  const auto diag = sweep({2, 10, 4}, {0, 0, 1}, {0, 0, 1}, SweepMode::diagonal, 2);
  ASSERT_EQ(diag.size(), 3u);
  EXPECT_EQ(diag[2].K, 10);
  EXPECT_EQ(diag[2].T, 10);
}

TEST(Sweep, CatxWinsForSmallT) {
  for (const SweepRecord& r : sweep({10, 20, 1}, {0, 0, 1}, {2, 2, 1}, SweepMode::k_equals_l)) {
    EXPECT_EQ(r.winner, SchemeFamily::catx) << r.K;
  }
}

TEST(Tokens, RoundTrip) {
  for (SchemeFamily f : {SchemeFamily::catx, SchemeFamily::dog_rs, SchemeFamily::gasp_rs, SchemeFamily::gasp_r}) {
    EXPECT_EQ(parse_scheme_family(scheme_family_token(f)), f);
  }
  EXPECT_EQ(parse_sweep_mode("KequalsL"), SweepMode::k_equals_l);
  EXPECT_EQ(parse_sweep_mode("full"), SweepMode::full);
  EXPECT_FALSE(parse_sweep_mode("bogus"));
}

}  // namespace
}  // namespace pdmm
