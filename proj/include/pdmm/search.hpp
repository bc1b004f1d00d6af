// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pdmm/degrees.hpp"

namespace pdmm {

/// Families compared by the search, listed in tie-break order.
enum class SchemeFamily { catx, dog_rs, gasp_rs, gasp_r };

/// "CATX", "DOG_RS", "GASP_RS", "GASP_R".
std::string_view scheme_family_token(SchemeFamily f) noexcept;
std::optional<SchemeFamily> parse_scheme_family(std::string_view token) noexcept;
Family to_family(SchemeFamily f) noexcept;

struct SchemeChoice {
  SchemeFamily family = SchemeFamily::gasp_r;
  /// The problem as asked.
  std::int64_t K = 0;
  std::int64_t L = 0;
  std::int64_t T = 0;
  std::optional<std::int64_t> r;
  std::optional<std::int64_t> s;
  std::optional<std::int64_t> x;
  std::int64_t n_workers = 0;
  /// True when the table was built for (L, K, T), i.e. for B^T A^T.
  bool transposed = false;

  /// Rebuilds the table the choice refers to (in its transposed orientation if any).
  Construction construction() const;
};

SchemeChoice best_gasp_r(std::int64_t K, std::int64_t L, std::int64_t T);
SchemeChoice best_gasp_rs(std::int64_t K, std::int64_t L, std::int64_t T);
SchemeChoice best_dog_rs(std::int64_t K, std::int64_t L, std::int64_t T);
/// Absent when T exceeds min(K, L), where CAT_x is not defined.
std::optional<SchemeChoice> catx_choice(std::int64_t K, std::int64_t L, std::int64_t T);

/// Exact rational p/q.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  double percent() const noexcept { return 100.0 * value(); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

struct SweepRecord {
  std::int64_t K = 0;
  std::int64_t L = 0;
  std::int64_t T = 0;
  std::optional<SchemeChoice> catx;
  SchemeChoice gasp_r;
  SchemeChoice gasp_rs;
  SchemeChoice dog_rs;
  SchemeFamily winner = SchemeFamily::gasp_r;
  /// Second-best N minus best N.
  std::int64_t margin = 0;
  /// PoleGap is never evaluated.
  bool polegap_absent = true;
  /// (N_GASP_r - N_X) / N_GASP_r.
  Ratio saving_dog_rs;
  Ratio saving_gasp_rs;
  /// (N_GASP_r - N_X) / N_X, the relative improvement plotted against K=L=T.
  Ratio improvement_dog_rs;
  Ratio improvement_gasp_rs;

  const SchemeChoice& choice(SchemeFamily f) const;
  std::int64_t winner_n() const { return choice(winner).n_workers; }
};

SweepRecord best_scheme(std::int64_t K, std::int64_t L, std::int64_t T);

struct IntRange {
  std::int64_t lo = 2;
  std::int64_t hi = 2;
  std::int64_t step = 1;
};

/// full: every (K, L, T); k_equals_l: L tied to K; diagonal: K = L = T, driven by the K range.
enum class SweepMode { full, k_equals_l, diagonal };

std::optional<SweepMode> parse_sweep_mode(std::string_view token) noexcept;

/// One record per grid point in lexicographic (K, L, T) order. Points are
/// evaluated on `threads` workers (0 picks the hardware concurrency).
std::vector<SweepRecord> sweep(const IntRange& k_range, const IntRange& l_range, const IntRange& t_range,
                               SweepMode mode, unsigned threads = 0);

}  // namespace pdmm
