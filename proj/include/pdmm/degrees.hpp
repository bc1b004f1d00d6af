// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pdmm {

using Degrees = std::vector<std::int64_t>;

/// Exponent vectors of the encoding polynomials F (alpha) and G (beta).
///
/// The "p" parts carry data blocks, the "s" parts carry random masks. When a
/// modulus q is present all additions in the degree table are taken mod q and
/// every entry lies in [0, q); otherwise entries are non-negative integers.
class DegreeVectors {
 public:
  DegreeVectors(Degrees alpha_p, Degrees alpha_s, Degrees beta_p, Degrees beta_s,
                std::optional<std::int64_t> modulus = std::nullopt);

  const Degrees& alpha_p() const noexcept { return alpha_p_; }
  const Degrees& alpha_s() const noexcept { return alpha_s_; }
  const Degrees& beta_p() const noexcept { return beta_p_; }
  const Degrees& beta_s() const noexcept { return beta_s_; }
  std::optional<std::int64_t> modulus() const noexcept { return modulus_; }
  bool is_cyclic() const noexcept { return modulus_.has_value(); }

  std::int64_t K() const noexcept { return static_cast<std::int64_t>(alpha_p_.size()); }
  std::int64_t L() const noexcept { return static_cast<std::int64_t>(beta_p_.size()); }
  std::int64_t T() const noexcept { return static_cast<std::int64_t>(alpha_s_.size()); }

  /// alpha_p || alpha_s (row headers of the table).
  Degrees alpha() const;
  /// beta_p || beta_s (column headers of the table).
  Degrees beta() const;

  /// Table entry for row and column headers, reduced mod q when cyclic.
  std::int64_t sum(std::int64_t a, std::int64_t b) const noexcept;

  friend bool operator==(const DegreeVectors&, const DegreeVectors&) = default;

 private:
  Degrees alpha_p_;
  Degrees alpha_s_;
  Degrees beta_p_;
  Degrees beta_s_;
  std::optional<std::int64_t> modulus_;
};

enum class Family { catx, gasp_r, gasp_rs, dog_rs, custom };

std::string_view family_token(Family f) noexcept;
/// Accepts the tokens produced by family_token.
std::optional<Family> parse_family(std::string_view token) noexcept;

struct ConstructionParams {
  std::int64_t K = 0;
  std::int64_t L = 0;
  std::int64_t T = 0;
  std::optional<std::int64_t> r;
  std::optional<std::int64_t> s;
  std::optional<std::int64_t> x;

  friend bool operator==(const ConstructionParams&, const ConstructionParams&) = default;
};

/// A degree table together with the family and parameters that produced it.
struct Construction {
  Family family;
  ConstructionParams params;
  DegreeVectors table;
};

/// Builds the named family. Missing r/s/x are parameter-range errors except
/// x for CAT_x, which defaults to 1.
Construction construct(Family family, const ConstructionParams& params);
/// Wraps a hand-supplied table.
Construction custom_construction(DegreeVectors table);

/// Generalized arithmetic progression: element i is (i / r) * x + (i % r).
Degrees gap(std::int64_t length, std::int64_t x, std::int64_t r);

/// Smallest kappa, lambda >= 0 with gcd(K+1+kappa, T-1) = gcd(L+1+lambda, T-1) = 1.
std::pair<std::int64_t, std::int64_t> kappa_lambda(std::int64_t K, std::int64_t L, std::int64_t T);

DegreeVectors construct_gasp_r(std::int64_t K, std::int64_t L, std::int64_t T, std::int64_t r);
DegreeVectors construct_gasp_rs(std::int64_t K, std::int64_t L, std::int64_t T, std::int64_t r,
                                std::int64_t s);
DegreeVectors construct_dog_rs(std::int64_t K, std::int64_t L, std::int64_t T, std::int64_t r,
                               std::int64_t s);

struct CatParameters {
  std::int64_t kappa = 0;
  std::int64_t lambda = 0;
  std::int64_t k_star = 0;
  std::int64_t l_star = 0;
  std::int64_t t_bar = 0;
  std::int64_t q = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;
};

/// Throws Errc::not_coprime when gcd(x, q) != 1.
CatParameters cat_parameters(std::int64_t K, std::int64_t L, std::int64_t T, std::int64_t x);
DegreeVectors construct_cat_x(std::int64_t K, std::int64_t L, std::int64_t T, std::int64_t x = 1);

/// (K+1)(L+1) + (T-1)^2 + kappa + lambda.
std::int64_t n_catx_formula(std::int64_t K, std::int64_t L, std::int64_t T);

// Sets below are sorted, duplicate-free sequences.
struct QuadrantSets {
  Degrees tl;
  Degrees tr;
  Degrees bl;
  Degrees br;
  Degrees gamma;
  std::int64_t n_unique = 0;
};

/// {a} + {b}, reduced mod `modulus` when present.
Degrees sumset(const Degrees& a, const Degrees& b, std::optional<std::int64_t> modulus);
Degrees set_intersection(const Degrees& a, const Degrees& b);

QuadrantSets quadrants(const DegreeVectors& dv);

/// Number of distinct table entries, i.e. the number of workers.
std::int64_t count_unique(const DegreeVectors& dv);

enum class Condition { I, II, IIIa, IIIb, IIIc, IV };

std::string_view condition_name(Condition c) noexcept;

struct Witness {
  Condition condition;
  std::string where;
  std::int64_t value;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct ValidationReport {
  bool i = true;
  bool ii = true;
  bool iiia = true;
  bool iiib = true;
  bool iiic = true;
  bool iv = true;
  std::int64_t n_unique = 0;
  std::vector<Witness> witnesses;

  bool passed(Condition c) const noexcept;
  bool valid() const noexcept { return i && ii && iiia && iiib && iiic && iv; }
};

/// Private-and-decodable conditions for integer tables. Failures are reported,
/// never thrown; a cyclic table is an Errc::invalid_table error.
ValidationReport validate_degree_table(const DegreeVectors& dv);

/// Cyclic-addition conditions. Condition IV is certified by the sufficient
/// criterion that alpha_s and beta_s are arithmetic progressions mod q with
/// differences coprime to q, and q >= N.
ValidationReport validate_cat(const DegreeVectors& dv);

struct Interval {
  std::int64_t lo;
  std::int64_t hi;
};

struct LatticePoint {
  std::int64_t i;
  std::int64_t j;

  friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// All (i, j) in the rectangle with i*x = j*y (mod q), by enumeration.
std::vector<LatticePoint> lattice_solutions(const CatParameters& params, Interval i_range,
                                            Interval j_range);

/// (|TR ∩ BR|, |BL ∩ BR|) for a cyclic table.
std::pair<std::int64_t, std::int64_t> quadrant_intersections(const DegreeVectors& dv);

std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept;
/// Representative of a mod m in [0, m).
std::int64_t mod(std::int64_t a, std::int64_t m) noexcept;
/// Inverse of a modulo m; throws Errc::not_coprime when none exists.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

}  // namespace pdmm
