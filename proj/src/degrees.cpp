// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdmm/degrees.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "pdmm/error.hpp"

namespace pdmm {
namespace {

using i64 = std::int64_t;

// Bitmap counting is used while the largest entry stays below this bound.
constexpr i64 kDenseCountLimit = i64{1} << 24;

std::string klt(i64 K, i64 L, i64 T) {
  return "(K=" + std::to_string(K) + ", L=" + std::to_string(L) + ", T=" + std::to_string(T) + ")";
}

void require_ordered(i64 K, i64 L, i64 T) {
  if (T < 2) throw Error(Errc::parameter_range, "T must be at least 2 " + klt(K, L, T));
  if (K < L || L < T) throw Error(Errc::parameter_order, "requires K >= L >= T " + klt(K, L, T));
}

Degrees iota(i64 n, i64 step = 1, i64 offset = 0) {
  Degrees v(static_cast<std::size_t>(n));
  for (i64 i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = checked_add(offset, checked_mul(i, step));
  return v;
}

Degrees shifted(Degrees v, i64 offset) {
  for (auto& e : v) e = checked_add(e, offset);
  return v;
}

std::optional<i64> first_duplicate(Degrees v) {
  std::sort(v.begin(), v.end());
  auto it = std::adjacent_find(v.begin(), v.end());
  if (it == v.end()) return std::nullopt;
  return *it;
}

__extension__ typedef __int128 i128;

i64 mulmod(i64 a, i64 b, i64 m) {
  return mod(static_cast<i64>(static_cast<i128>(a) * b % m), m);
}

Degrees table_entries(const Degrees& a, const Degrees& b, std::optional<i64> modulus) {
  Degrees out;
  out.reserve(a.size() * b.size());
  for (i64 x : a) {
    for (i64 y : b) out.push_back(modulus ? mod(x + y, *modulus) : x + y);
  }
  return out;
}

// Conditions I to III are shared between integer and cyclic tables.
ValidationReport check_common(const DegreeVectors& dv) {
  ValidationReport rep;
  const QuadrantSets qs = quadrants(dv);
  rep.n_unique = qs.n_unique;

  const i64 counted = count_unique(dv);
  rep.i = counted == qs.n_unique && static_cast<i64>(qs.gamma.size()) == qs.n_unique;
  if (!rep.i) rep.witnesses.push_back({Condition::I, "N", counted});

  const Degrees tl_entries = table_entries(dv.alpha_p(), dv.beta_p(), dv.modulus());
  rep.ii = static_cast<i64>(qs.tl.size()) == dv.K() * dv.L();
  if (!rep.ii) {
    rep.witnesses.push_back({Condition::II, "TL", first_duplicate(tl_entries).value_or(-1)});
  }

  const auto disjoint = [&](const Degrees& other, Condition c, const char* where, bool& flag) {
    const Degrees common = set_intersection(qs.tl, other);
    flag = common.empty();
    if (!flag) rep.witnesses.push_back({c, where, common.front()});
  };
  disjoint(qs.tr, Condition::IIIa, "TL∩TR", rep.iiia);
  disjoint(qs.bl, Condition::IIIb, "TL∩BL", rep.iiib);
  disjoint(qs.br, Condition::IIIc, "TL∩BR", rep.iiic);
  return rep;
}

// Arithmetic progression mod q with a common difference coprime to q.
void check_progression(const Degrees& v, i64 q, const char* name, ValidationReport& rep) {
  if (v.size() < 2) return;
  const i64 d = mod(v[1] - v[0], q);
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    if (mod(v[k + 1] - v[k], q) != d) {
      rep.iv = false;
      rep.witnesses.push_back({Condition::IV, std::string(name) + " not an arithmetic progression",
                               static_cast<i64>(k + 1)});
      return;
    }
  }
  if (gcd(d, q) != 1) {
    rep.iv = false;
    rep.witnesses.push_back({Condition::IV, std::string(name) + " difference not coprime to q", d});
  }
}

}  // namespace

i64 gcd(i64 a, i64 b) noexcept { return std::gcd(a, b); }

i64 mod(i64 a, i64 m) noexcept {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 mod_inverse(i64 a, i64 m) {
  i64 old_r = mod(a, m), r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    const i64 quot = old_r / r;
    old_r = std::exchange(r, old_r - quot * r);
    old_s = std::exchange(s, old_s - quot * s);
  }
  if (old_r != 1) {
    throw Error(Errc::not_coprime, std::to_string(a) + " has no inverse mod " + std::to_string(m));
  }
  return mod(old_s, m);
}

DegreeVectors::DegreeVectors(Degrees alpha_p, Degrees alpha_s, Degrees beta_p, Degrees beta_s,
                             std::optional<i64> modulus)
    : alpha_p_(std::move(alpha_p)),
      alpha_s_(std::move(alpha_s)),
      beta_p_(std::move(beta_p)),
      beta_s_(std::move(beta_s)),
      modulus_(modulus) {
  if (alpha_s_.size() != beta_s_.size()) {
    throw Error(Errc::dimension_mismatch, "alpha_s and beta_s must both have length T");
  }
  if (modulus_ && *modulus_ < 1) {
    throw Error(Errc::parameter_range, "modulus must be positive");
  }
  for (const Degrees* v : {&alpha_p_, &alpha_s_, &beta_p_, &beta_s_}) {
    for (i64 e : *v) {
      if (e < 0) throw Error(Errc::parameter_range, "degrees must be non-negative");
      if (modulus_ && e >= *modulus_) throw Error(Errc::parameter_range, "degrees must lie in [0, q)");
    }
  }
}

Degrees DegreeVectors::alpha() const {
  Degrees v = alpha_p_;
  v.insert(v.end(), alpha_s_.begin(), alpha_s_.end());
  return v;
}

Degrees DegreeVectors::beta() const {
  Degrees v = beta_p_;
  v.insert(v.end(), beta_s_.begin(), beta_s_.end());
  return v;
}

i64 DegreeVectors::sum(i64 a, i64 b) const noexcept { return modulus_ ? mod(a + b, *modulus_) : a + b; }

std::string_view family_token(Family f) noexcept {
  switch (f) {
    case Family::catx: return "catx";
    case Family::gasp_r: return "gasp-r";
    case Family::gasp_rs: return "gasp-rs";
    case Family::dog_rs: return "dog-rs";
    case Family::custom: return "custom";
  }
  return "custom";
}

std::optional<Family> parse_family(std::string_view token) noexcept {
  for (Family f : {Family::catx, Family::gasp_r, Family::gasp_rs, Family::dog_rs, Family::custom}) {
    if (family_token(f) == token) return f;
  }
  return std::nullopt;
}

Construction construct(Family family, const ConstructionParams& params) {
  const auto need = [&](const std::optional<i64>& v, const char* name) {
    if (!v) throw Error(Errc::parameter_range, std::string(family_token(family)) + " requires " + name);
    return *v;
  };
  ConstructionParams p{params.K, params.L, params.T, std::nullopt, std::nullopt, std::nullopt};
  switch (family) {
    case Family::catx: {
      p.x = params.x.value_or(1);
      return {family, p, construct_cat_x(p.K, p.L, p.T, *p.x)};
    }
    case Family::gasp_r: {
      p.r = need(params.r, "r");
      return {family, p, construct_gasp_r(p.K, p.L, p.T, *p.r)};
    }
    case Family::gasp_rs: {
      p.r = need(params.r, "r");
      p.s = need(params.s, "s");
      return {family, p, construct_gasp_rs(p.K, p.L, p.T, *p.r, *p.s)};
    }
    case Family::dog_rs: {
      p.r = need(params.r, "r");
      p.s = need(params.s, "s");
      return {family, p, construct_dog_rs(p.K, p.L, p.T, *p.r, *p.s)};
    }
    case Family::custom: break;
  }
  throw Error(Errc::parameter_range, "custom tables have no constructor; supply the vectors");
}

Construction custom_construction(DegreeVectors table) {
  ConstructionParams p{table.K(), table.L(), table.T(), std::nullopt, std::nullopt, std::nullopt};
  return {Family::custom, p, std::move(table)};
}

Degrees gap(i64 length, i64 x, i64 r) {
  if (length < 1 || r < 1) {
    throw Error(Errc::parameter_range, "gap requires length >= 1 and r >= 1");
  }
  Degrees v(static_cast<std::size_t>(length));
  for (i64 i = 0; i < length; ++i) {
    v[static_cast<std::size_t>(i)] = checked_add(checked_mul(i / r, x), i % r);
  }
  return v;
}

std::pair<i64, i64> kappa_lambda(i64 K, i64 L, i64 T) {
  require_ordered(K, L, T);
  if (T == 2) return {0, 0};
  const i64 t_bar = T - 1;
  i64 kappa = 0;
  while (gcd(K + 1 + kappa, t_bar) != 1) ++kappa;
  i64 lambda = 0;
  while (gcd(L + 1 + lambda, t_bar) != 1) ++lambda;
  return {kappa, lambda};
}

DegreeVectors construct_gasp_r(i64 K, i64 L, i64 T, i64 r) {
  if (L < 2 || T < 2) throw Error(Errc::parameter_range, "GASP_r requires L, T >= 2 " + klt(K, L, T));
  if (K < L) throw Error(Errc::parameter_order, "GASP_r requires K >= L " + klt(K, L, T));
  if (r < 1 || r > std::min(K, T)) {
    throw Error(Errc::parameter_range, "GASP_r requires 1 <= r <= min(K, T)");
  }
  const i64 kl = checked_mul(K, L);
  return {iota(K), shifted(gap(T, K, r), kl), iota(L, K), iota(T, 1, kl)};
}

DegreeVectors construct_gasp_rs(i64 K, i64 L, i64 T, i64 r, i64 s) {
  if (K < 2 || L < 2 || T < 2) {
    throw Error(Errc::parameter_range, "GASP_rs requires K, L, T >= 2 " + klt(K, L, T));
  }
  if (r < 1 || r > T || s < 1 || s > T) {
    throw Error(Errc::parameter_range, "GASP_rs requires 1 <= r, s <= T");
  }
  const i64 kl = checked_mul(K, L);
  return {iota(K), shifted(gap(T, K, r), kl), iota(L, K), shifted(gap(T, K, s), kl)};
}

DegreeVectors construct_dog_rs(i64 K, i64 L, i64 T, i64 r, i64 s) {
  if (K < 2 || L < 2 || T < 2) {
    throw Error(Errc::parameter_range, "DOG_rs requires K, L, T >= 2 " + klt(K, L, T));
  }
  if (r < 1 || r > T || s < 1 || s > std::min(T, K + r)) {
    throw Error(Errc::parameter_range, "DOG_rs requires 1 <= r <= T and 1 <= s <= min(T, K+r)");
  }
  const i64 stride = K + r;
  const i64 beta_offset = checked_add(checked_mul(stride, L - 1), K);
  return {iota(K), shifted(gap(T, stride, r), K), iota(L, stride),
          shifted(gap(T, stride, s), beta_offset)};
}

CatParameters cat_parameters(i64 K, i64 L, i64 T, i64 x) {
  const auto [kappa, lambda] = kappa_lambda(K, L, T);
  CatParameters cp;
  cp.kappa = kappa;
  cp.lambda = lambda;
  cp.k_star = K + 1 + kappa;
  cp.l_star = L + 1 + lambda;
  cp.t_bar = T - 1;
  cp.q = checked_add(checked_mul(cp.k_star, cp.l_star), checked_mul(cp.t_bar, cp.t_bar));
  if (x < 1 || gcd(x, cp.q) != 1) {
    throw Error(Errc::not_coprime,
                "x=" + std::to_string(x) + " must be positive and coprime to q=" + std::to_string(cp.q));
  }
  cp.x = x;
  // x*t_bar + y*k_star = 0 (mod q)
  cp.y = mulmod(mod(-mulmod(x, cp.t_bar, cp.q), cp.q), mod_inverse(cp.k_star, cp.q), cp.q);
  if (gcd(cp.y, cp.q) != 1) {
    throw std::logic_error("y is not coprime to q; K* or T-bar share a factor with q");
  }
  return cp;
}

DegreeVectors construct_cat_x(i64 K, i64 L, i64 T, i64 x) {
  const CatParameters cp = cat_parameters(K, L, T, x);
  const i64 q = cp.q;
  const i64 xm = mod(x, q);
  Degrees alpha_p(static_cast<std::size_t>(K)), alpha_s(static_cast<std::size_t>(T));
  Degrees beta_p(static_cast<std::size_t>(L)), beta_s(static_cast<std::size_t>(T));
  for (i64 i = 0; i < K; ++i) alpha_p[i] = mulmod(cp.y, i, q);
  const i64 ky = mulmod(K, cp.y, q);
  for (i64 i = 0; i < T; ++i) alpha_s[i] = mod(mulmod(xm, i, q) + ky, q);
  for (i64 i = 0; i < L; ++i) beta_p[i] = mulmod(xm, i, q);
  for (i64 i = 0; i < T; ++i) beta_s[i] = mod(mulmod(cp.y, i, q) - xm, q);
  return {std::move(alpha_p), std::move(alpha_s), std::move(beta_p), std::move(beta_s), q};
}

i64 n_catx_formula(i64 K, i64 L, i64 T) {
  const auto [kappa, lambda] = kappa_lambda(K, L, T);
  return checked_add(checked_mul(K + 1, L + 1), checked_mul(T - 1, T - 1)) + kappa + lambda;
}

Degrees sumset(const Degrees& a, const Degrees& b, std::optional<i64> modulus) {
  Degrees out = table_entries(a, b, modulus);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Degrees set_intersection(const Degrees& a, const Degrees& b) {
  Degrees out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

QuadrantSets quadrants(const DegreeVectors& dv) {
  QuadrantSets qs;
  const auto m = dv.modulus();
  qs.tl = sumset(dv.alpha_p(), dv.beta_p(), m);
  qs.tr = sumset(dv.alpha_p(), dv.beta_s(), m);
  qs.bl = sumset(dv.alpha_s(), dv.beta_p(), m);
  qs.br = sumset(dv.alpha_s(), dv.beta_s(), m);
  for (const Degrees* part : {&qs.tl, &qs.tr, &qs.bl, &qs.br}) {
    qs.gamma.insert(qs.gamma.end(), part->begin(), part->end());
  }
  std::sort(qs.gamma.begin(), qs.gamma.end());
  qs.gamma.erase(std::unique(qs.gamma.begin(), qs.gamma.end()), qs.gamma.end());
  qs.n_unique = static_cast<i64>(qs.gamma.size());
  return qs;
}

i64 count_unique(const DegreeVectors& dv) {
  const Degrees alpha = dv.alpha();
  const Degrees beta = dv.beta();
  if (alpha.empty() || beta.empty()) return 0;
  i64 bound = 0;
  if (dv.modulus()) {
    bound = *dv.modulus();
  } else {
    bound = *std::max_element(alpha.begin(), alpha.end()) + *std::max_element(beta.begin(), beta.end()) + 1;
  }
  if (bound > kDenseCountLimit) {
    return static_cast<i64>(sumset(alpha, beta, dv.modulus()).size());
  }
  std::vector<unsigned char> seen(static_cast<std::size_t>(bound), 0);
  i64 n = 0;
  const i64 q = dv.modulus().value_or(0);
  for (i64 a : alpha) {
    for (i64 b : beta) {
      i64 e = a + b;
      if (q != 0 && e >= q) e -= q;
      auto& slot = seen[static_cast<std::size_t>(e)];
      n += slot == 0;
      slot = 1;
    }
  }
  return n;
}

std::string_view condition_name(Condition c) noexcept {
  switch (c) {
    case Condition::I: return "I";
    case Condition::II: return "II";
    case Condition::IIIa: return "IIIa";
    case Condition::IIIb: return "IIIb";
    case Condition::IIIc: return "IIIc";
    case Condition::IV: return "IV";
  }
  return "?";
}

bool ValidationReport::passed(Condition c) const noexcept {
  switch (c) {
    case Condition::I: return i;
    case Condition::II: return ii;
    case Condition::IIIa: return iiia;
    case Condition::IIIb: return iiib;
    case Condition::IIIc: return iiic;
    case Condition::IV: return iv;
  }
  return false;
}

ValidationReport validate_degree_table(const DegreeVectors& dv) {
  if (dv.is_cyclic()) {
    throw Error(Errc::invalid_table, "validate_degree_table expects an integer table; use validate_cat");
  }
  ValidationReport rep = check_common(dv);
  if (auto dup = first_duplicate(dv.alpha())) {
    rep.iv = false;
    rep.witnesses.push_back({Condition::IV, "alpha", *dup});
  }
  if (auto dup = first_duplicate(dv.beta())) {
    rep.iv = false;
    rep.witnesses.push_back({Condition::IV, "beta", *dup});
  }
  return rep;
}

ValidationReport validate_cat(const DegreeVectors& dv) {
  if (!dv.is_cyclic()) {
    throw Error(Errc::invalid_table, "validate_cat expects a cyclic table with modulus q");
  }
  ValidationReport rep = check_common(dv);
  const i64 q = *dv.modulus();
  check_progression(dv.alpha_s(), q, "alpha_s", rep);
  check_progression(dv.beta_s(), q, "beta_s", rep);
  if (q < rep.n_unique) {
    rep.iv = false;
    rep.witnesses.push_back({Condition::IV, "q < N", rep.n_unique});
  }
  return rep;
}

std::vector<LatticePoint> lattice_solutions(const CatParameters& params, Interval i_range,
                                            Interval j_range) {
  std::vector<LatticePoint> out;
  const i64 q = params.q;
  for (i64 i = i_range.lo; i <= i_range.hi; ++i) {
    const i64 lhs = mulmod(mod(i, q), mod(params.x, q), q);
    for (i64 j = j_range.lo; j <= j_range.hi; ++j) {
      if (lhs == mulmod(mod(j, q), mod(params.y, q), q)) out.push_back({i, j});
    }
  }
  return out;
}

std::pair<i64, i64> quadrant_intersections(const DegreeVectors& dv) {
  if (!dv.is_cyclic()) {
    throw Error(Errc::invalid_table, "quadrant intersections are defined for cyclic tables");
  }
  const QuadrantSets qs = quadrants(dv);
  return {static_cast<i64>(set_intersection(qs.tr, qs.br).size()),
          static_cast<i64>(set_intersection(qs.bl, qs.br).size())};
}

}  // namespace pdmm
