// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdmm/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>

#include "pdmm/error.hpp"

namespace pdmm {
namespace {

using i64 = std::int64_t;

void require_sizes(i64 K, i64 L, i64 T) {
  if (K < 2 || L < 2 || T < 2) {
    throw Error(Errc::parameter_range, "search requires K, L, T >= 2");
  }
}

SchemeChoice seed_choice(SchemeFamily f, i64 K, i64 L, i64 T) {
  SchemeChoice c;
  c.family = f;
  c.K = K;
  c.L = L;
  c.T = T;
  c.transposed = L > K;
  return c;
}

// Oriented sizes: the larger of K and L comes first.
std::pair<i64, i64> oriented(i64 K, i64 L) { return {std::max(K, L), std::min(K, L)}; }

Ratio reduced(i64 num, i64 den) {
  const i64 g = std::max<i64>(gcd(num < 0 ? -num : num, den), 1);
  return {num / g, den / g};
}

}  // namespace

std::string_view scheme_family_token(SchemeFamily f) noexcept {
  switch (f) {
    case SchemeFamily::catx: return "CATX";
    case SchemeFamily::dog_rs: return "DOG_RS";
    case SchemeFamily::gasp_rs: return "GASP_RS";
    case SchemeFamily::gasp_r: return "GASP_R";
  }
  return "?";
}

std::optional<SchemeFamily> parse_scheme_family(std::string_view token) noexcept {
  for (SchemeFamily f : {SchemeFamily::catx, SchemeFamily::dog_rs, SchemeFamily::gasp_rs, SchemeFamily::gasp_r}) {
    if (token == scheme_family_token(f)) return f;
  }
  return std::nullopt;
}

Family to_family(SchemeFamily f) noexcept {
  switch (f) {
    case SchemeFamily::catx: return Family::catx;
    case SchemeFamily::dog_rs: return Family::dog_rs;
    case SchemeFamily::gasp_rs: return Family::gasp_rs;
    case SchemeFamily::gasp_r: return Family::gasp_r;
  }
  return Family::custom;
}

Construction SchemeChoice::construction() const {
  const auto [k, l] = transposed ? std::pair{L, K} : std::pair{K, L};
  return construct(to_family(family), {k, l, T, r, s, x});
}

SchemeChoice best_gasp_r(i64 K, i64 L, i64 T) {
  require_sizes(K, L, T);
  const auto [k, l] = oriented(K, L);
  SchemeChoice best = seed_choice(SchemeFamily::gasp_r, K, L, T);
  for (i64 r = 1; r <= std::min(k, T); ++r) {
    const i64 n = count_unique(construct_gasp_r(k, l, T, r));
    if (!best.r || n < best.n_workers) {
      best.r = r;
      best.n_workers = n;
    }
  }
  return best;
}

SchemeChoice best_gasp_rs(i64 K, i64 L, i64 T) {
  require_sizes(K, L, T);
  const auto [k, l] = oriented(K, L);
  SchemeChoice best = seed_choice(SchemeFamily::gasp_rs, K, L, T);
  for (i64 r = 1; r <= T; ++r) {
    for (i64 s = 1; s <= T; ++s) {
      const i64 n = count_unique(construct_gasp_rs(k, l, T, r, s));
      if (!best.r || n < best.n_workers) {
        best.r = r;
        best.s = s;
        best.n_workers = n;
      }
    }
  }
  return best;
}

SchemeChoice best_dog_rs(i64 K, i64 L, i64 T) {
  require_sizes(K, L, T);
  const auto [k, l] = oriented(K, L);
  SchemeChoice best = seed_choice(SchemeFamily::dog_rs, K, L, T);
  for (i64 r = 1; r <= T; ++r) {
    for (i64 s = 1; s <= std::min(T, k + r); ++s) {
      const i64 n = count_unique(construct_dog_rs(k, l, T, r, s));
      if (!best.r || n < best.n_workers) {
        best.r = r;
        best.s = s;
        best.n_workers = n;
      }
    }
  }
  return best;
}

std::optional<SchemeChoice> catx_choice(i64 K, i64 L, i64 T) {
  require_sizes(K, L, T);
  const auto [k, l] = oriented(K, L);
  if (T > l) return std::nullopt;
  SchemeChoice c = seed_choice(SchemeFamily::catx, K, L, T);
  c.x = 1;
  c.n_workers = n_catx_formula(k, l, T);
  return c;
}

const SchemeChoice& SweepRecord::choice(SchemeFamily f) const {
  switch (f) {
    case SchemeFamily::catx:
      if (!catx) throw Error(Errc::parameter_range, "CAT_x is not defined for this point");
      return *catx;
    case SchemeFamily::dog_rs: return dog_rs;
    case SchemeFamily::gasp_rs: return gasp_rs;
    case SchemeFamily::gasp_r: return gasp_r;
  }
  return gasp_r;
}

SweepRecord best_scheme(i64 K, i64 L, i64 T) {
  SweepRecord rec;
  rec.K = K;
  rec.L = L;
  rec.T = T;
  rec.catx = catx_choice(K, L, T);
  rec.gasp_r = best_gasp_r(K, L, T);
  rec.gasp_rs = best_gasp_rs(K, L, T);
  rec.dog_rs = best_dog_rs(K, L, T);

  std::vector<const SchemeChoice*> ranked;
  if (rec.catx) ranked.push_back(&*rec.catx);
  ranked.insert(ranked.end(), {&rec.dog_rs, &rec.gasp_rs, &rec.gasp_r});
  std::stable_sort(ranked.begin(), ranked.end(), [](const SchemeChoice* a, const SchemeChoice* b) {
    return std::tie(a->n_workers, a->family) < std::tie(b->n_workers, b->family);
  });
  rec.winner = ranked[0]->family;
  rec.margin = ranked[1]->n_workers - ranked[0]->n_workers;

  const i64 g = rec.gasp_r.n_workers;
  rec.saving_dog_rs = reduced(g - rec.dog_rs.n_workers, g);
  rec.saving_gasp_rs = reduced(g - rec.gasp_rs.n_workers, g);
  rec.improvement_dog_rs = reduced(g - rec.dog_rs.n_workers, rec.dog_rs.n_workers);
  rec.improvement_gasp_rs = reduced(g - rec.gasp_rs.n_workers, rec.gasp_rs.n_workers);
  return rec;
}

std::optional<SweepMode> parse_sweep_mode(std::string_view token) noexcept {
  if (token == "full") return SweepMode::full;
  if (token == "KequalsL" || token == "k-equals-l") return SweepMode::k_equals_l;
  if (token == "diagonal") return SweepMode::diagonal;
  return std::nullopt;
}

std::vector<SweepRecord> sweep(const IntRange& k_range, const IntRange& l_range, const IntRange& t_range,
                               SweepMode mode, unsigned threads) {
  const auto values = [](const IntRange& r, const char* name) {
    if (r.step < 1 || r.lo > r.hi) {
      throw Error(Errc::parameter_range, std::string(name) + " range must be non-empty with a positive step");
    }
    std::vector<i64> out;
    for (i64 v = r.lo; v <= r.hi; v += r.step) out.push_back(v);
    return out;
  };
  const auto ks = values(k_range, "K");
  std::vector<std::tuple<i64, i64, i64>> points;
  if (mode == SweepMode::diagonal) {
    for (i64 k : ks) points.emplace_back(k, k, k);
  } else {
    const auto ts = values(t_range, "T");
    const auto ls = mode == SweepMode::full ? values(l_range, "L") : std::vector<i64>{};
    for (i64 k : ks) {
      for (i64 l : mode == SweepMode::full ? ls : std::vector<i64>{k}) {
        for (i64 t : ts) points.emplace_back(k, l, t);
      }
    }
  }
  for (const auto& [k, l, t] : points) require_sizes(k, l, t);

  std::vector<SweepRecord> records(points.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, points.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        const auto& [k, l, t] = points[i];
        records[i] = best_scheme(k, l, t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

}  // namespace pdmm
