// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdmm/scheme.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

#include "pdmm/error.hpp"
#include "pdmm/random.hpp"

namespace pdmm {
namespace {

using i64 = std::int64_t;
using u64 = std::uint64_t;

std::string join(const std::vector<u64>& values) {
  std::string out;
  for (u64 v : values) {
    if (!out.empty()) out += ", ";
    out += std::to_string(v);
  }
  return out;
}

std::string failed_conditions(const ValidationReport& rep) {
  std::string out;
  for (Condition c : {Condition::I, Condition::II, Condition::IIIa, Condition::IIIb, Condition::IIIc,
                      Condition::IV}) {
    if (rep.passed(c)) continue;
    if (!out.empty()) out += ", ";
    out += condition_name(c);
  }
  return out;
}

PdmmScheme bare_scheme(const Construction& construction, PrimeField field) {
  const QuadrantSets qs = quadrants(construction.table);
  PdmmScheme s{construction, field, std::nullopt, std::nullopt, {}, qs.gamma, qs.n_unique,
               construction.table.T(), PointStrategy::explicit_points, {}};
  return s;
}

void fill_powers(PdmmScheme& s, FieldElement omega, i64 order) {
  s.omega = omega;
  s.root_order = order;
  s.rho.resize(static_cast<std::size_t>(s.n_workers));
  FieldElement acc{1};
  for (auto& r : s.rho) {
    r = acc;
    acc = s.field.mul(acc, omega);
  }
}

bool decodable(const PdmmScheme& s) { return is_invertible(scheme_vandermonde(s, s.gamma)); }

i64 max_entry(const DegreeVectors& dv) {
  const Degrees a = dv.alpha();
  const Degrees b = dv.beta();
  return *std::max_element(a.begin(), a.end()) + *std::max_element(b.begin(), b.end());
}

std::vector<FieldElement> powers(const PrimeField& f, FieldElement x, const Degrees& exps) {
  std::vector<FieldElement> out;
  out.reserve(exps.size());
  for (i64 e : exps) out.push_back(f.pow(x, static_cast<u64>(e)));
  return out;
}

void require_uniform_shapes(const std::vector<FieldMatrix>& blocks, std::size_t count, std::size_t rows,
                            std::size_t cols, const PrimeField& f, const char* what) {
  if (blocks.size() != count) {
    throw Error(Errc::dimension_mismatch, std::string(what) + ": expected " + std::to_string(count) +
                                              " blocks, got " + std::to_string(blocks.size()));
  }
  for (const auto& b : blocks) {
    if (b.rows() != rows || b.cols() != cols || !(b.field() == f)) {
      throw Error(Errc::dimension_mismatch, std::string(what) + ": blocks differ in shape or field");
    }
  }
}

FieldMatrix combine(const PrimeField& f, const std::vector<FieldMatrix>& data,
                    const std::vector<FieldElement>& data_w, const std::vector<FieldMatrix>& masks,
                    const std::vector<FieldElement>& mask_w, std::size_t rows, std::size_t cols) {
  FieldMatrix out(f, rows, cols);
  for (std::size_t i = 0; i < data.size(); ++i) add_scaled(out, data[i], data_w[i]);
  for (std::size_t i = 0; i < masks.size(); ++i) add_scaled(out, masks[i], mask_w[i]);
  return out;
}

std::vector<std::size_t> sample_subset(SplitMix64& rng, std::size_t n, std::size_t t) {
  std::vector<std::size_t> pick;
  for (std::size_t j = n - t; j < n; ++j) {
    const auto r = static_cast<std::size_t>(rng.below(j + 1));
    pick.push_back(std::find(pick.begin(), pick.end(), r) == pick.end() ? r : j);
  }
  std::sort(pick.begin(), pick.end());
  return pick;
}

u64 saturating_mul(u64 a, u64 b) {
  u64 out = 0;
  return __builtin_mul_overflow(a, b, &out) ? std::numeric_limits<u64>::max() : out;
}

u64 saturating_pow(u64 base, u64 e) {
  u64 out = 1;
  for (u64 i = 0; i < e; ++i) out = saturating_mul(out, base);
  return out;
}

// Checks, for one side of the encoding, that every data value induces a
// bijection from masks in F_p^T to task tuples of the chosen workers.
void check_side(const PdmmScheme& s, const Degrees& data_exps, const Degrees& mask_exps,
                const std::vector<std::vector<std::size_t>>& subsets, std::size_t witness_limit,
                SideDistribution& out) {
  const u64 p = s.field.modulus();
  const std::size_t t = mask_exps.size();
  const std::size_t k = data_exps.size();
  out.subsets = subsets.size();
  out.data_values = saturating_pow(p, k);
  out.outcomes = saturating_pow(p, t);

  std::vector<u64> stamp(out.outcomes, 0);
  u64 stamp_id = 0;
  std::vector<u64> data_col(k * t);
  std::vector<u64> mask_col(t * t);
  std::vector<u64> base(t);
  std::vector<u64> y(t);
  std::vector<u64> data_digit(k);
  std::vector<u64> mask_digit(t);
  std::vector<u64> place(t);
  for (std::size_t w = 0; w < t; ++w) place[w] = w == 0 ? 1 : place[w - 1] * p;

  const auto add_col = [p](std::vector<u64>& v, const u64* col, std::size_t n) {
    for (std::size_t w = 0; w < n; ++w) {
      v[w] += col[w];
      if (v[w] >= p) v[w] -= p;
    }
  };
  // Advances a base-p odometer, applying the matching column for every digit
  // touched; incrementing a digit mod p always adds its column once.
  const auto step = [&](std::vector<u64>& digits, const std::vector<u64>& cols, std::vector<u64>& v) {
    for (std::size_t d = 0; d < digits.size(); ++d) {
      add_col(v, cols.data() + d * t, t);
      if (++digits[d] < p) return true;
      digits[d] = 0;
    }
    return false;
  };

  for (const auto& subset : subsets) {
    for (std::size_t w = 0; w < t; ++w) {
      const FieldElement x = s.rho[subset[w]];
      for (std::size_t i = 0; i < k; ++i) data_col[i * t + w] = s.field.pow(x, static_cast<u64>(data_exps[i])).value;
      for (std::size_t j = 0; j < t; ++j) mask_col[j * t + w] = s.field.pow(x, static_cast<u64>(mask_exps[j])).value;
    }
    std::fill(base.begin(), base.end(), 0);
    std::fill(data_digit.begin(), data_digit.end(), 0);
    bool uniform = true;
    do {
      ++stamp_id;
      y = base;
      std::fill(mask_digit.begin(), mask_digit.end(), 0);
      do {
        u64 idx = 0;
        for (std::size_t w = 0; w < t; ++w) idx += y[w] * place[w];
        ++out.evaluations;
        if (stamp[idx] == stamp_id) {
          uniform = false;
          break;
        }
        stamp[idx] = stamp_id;
      } while (step(mask_digit, mask_col, y));
    } while (uniform && step(data_digit, data_col, base));
    if (!uniform && out.nonuniform.size() < witness_limit) out.nonuniform.push_back(subset);
  }
}

}  // namespace

std::string_view strategy_token(PointStrategy s) noexcept {
  switch (s) {
    case PointStrategy::roots_of_unity: return "roots-of-unity";
    case PointStrategy::random_search: return "random-search";
    case PointStrategy::explicit_points: return "explicit";
  }
  return "unknown";
}

PdmmScheme instantiate_cat(const Construction& construction, std::uint64_t min_p) {
  const DegreeVectors& dv = construction.table;
  const ValidationReport rep = validate_cat(dv);
  if (!rep.valid()) {
    throw Error(Errc::invalid_table, "table is not a CAT (fails " + failed_conditions(rep) + ")");
  }
  const i64 q = *dv.modulus();
  PdmmScheme s = bare_scheme(construction, find_field(static_cast<u64>(q), min_p));
  fill_powers(s, element_of_order(s.field, static_cast<u64>(q)), q);
  s.strategy = PointStrategy::roots_of_unity;
  if (!decodable(s)) {
    throw Error(Errc::instantiation_failed, "V(rho, gamma) is singular over F_" + std::to_string(s.field.modulus()));
  }
  return s;
}

PdmmScheme instantiate_cat(const DegreeVectors& table, std::uint64_t min_p) {
  return instantiate_cat(custom_construction(table), min_p);
}

PdmmScheme instantiate_degree_table(const Construction& construction, PointStrategy strategy,
                                    const InstantiateOptions& options) {
  const DegreeVectors& dv = construction.table;
  if (dv.is_cyclic()) {
    throw Error(Errc::invalid_table, "cyclic tables are instantiated through instantiate_cat");
  }
  const ValidationReport rep = validate_degree_table(dv);
  if (!rep.valid()) {
    throw Error(Errc::invalid_table, "degree table fails " + failed_conditions(rep));
  }
  const i64 n = count_unique(dv);
  const i64 t = dv.T();

  if (strategy == PointStrategy::roots_of_unity) {
    const auto& prm = construction.params;
    const bool gasp_r = construction.family == Family::gasp_r && prm.r;
    const bool small = gasp_r && *prm.r == 1;
    const bool big = gasp_r && *prm.r == std::min(prm.K, prm.T);
    if (!small && !big) {
      throw Error(Errc::unsupported_strategy,
                  "roots of unity are only defined for GASP_small and GASP_big, not " +
                      std::string(family_token(construction.family)));
    }
    i64 q = max_entry(dv) + 1;
    if (small) {
      while (gcd(q, dv.K()) != 1) ++q;
    }
    PdmmScheme s = bare_scheme(construction, find_field(static_cast<u64>(q), options.min_p));
    fill_powers(s, element_of_order(s.field, static_cast<u64>(q)), q);
    s.strategy = PointStrategy::roots_of_unity;
    if (!decodable(s)) {
      throw Error(Errc::instantiation_failed, "V(rho, gamma) is singular over F_" + std::to_string(s.field.modulus()));
    }
    return s;
  }
  if (strategy != PointStrategy::random_search) {
    throw Error(Errc::unsupported_strategy, "explicit points are supplied through make_scheme");
  }

  SplitMix64 rng(options.seed);
  SubmatrixOptions sub{options.submatrix_budget, options.seed, 1};
  std::vector<u64> tried;
  bool beta_first = false;
  u64 p = next_prime(std::max<u64>(static_cast<u64>(n) + 1, options.min_p));
  for (std::uint32_t prime_idx = 0; prime_idx < options.max_primes; ++prime_idx) {
    PdmmScheme s = bare_scheme(construction, PrimeField(p));
    s.strategy = PointStrategy::random_search;
    for (std::uint32_t attempt = 0; attempt < options.attempts_per_prime; ++attempt) {
      std::unordered_set<u64> seen;
      s.rho.clear();
      while (static_cast<i64>(s.rho.size()) < n) {
        const u64 v = rng.below(p - 1) + 1;
        if (seen.insert(v).second) s.rho.push_back({v});
      }
      if (!decodable(s)) continue;
      if (t > 0) {
        const auto ut = static_cast<std::size_t>(t);
        const FieldMatrix va = scheme_vandermonde(s, dv.alpha_s());
        const FieldMatrix vb = scheme_vandermonde(s, dv.beta_s());
        // Sampled pass on both sides, then the exhaustive walks.
        const SubmatrixOptions quick{std::min<u64>(4096, sub.budget), options.seed + attempt, 1};
        if (!all_txt_submatrices_invertible(va, ut, quick).passed()) continue;
        if (!all_txt_submatrices_invertible(vb, ut, quick).passed()) continue;
        const FieldMatrix* first = beta_first ? &vb : &va;
        const FieldMatrix* second = beta_first ? &va : &vb;
        if (!all_txt_submatrices_invertible(*first, ut, sub).passed()) continue;
        if (!all_txt_submatrices_invertible(*second, ut, sub).passed()) {
          // Lead with the side that failed last.
          beta_first = !beta_first;
          continue;
        }
      }
      s.rejected_primes = tried;
      return s;
    }
    tried.push_back(p);
    if (p > (u64{1} << 61)) break;
    p = next_prime(2 * p);
  }
  throw Error(Errc::instantiation_failed, "no verified evaluation points over p in {" + join(tried) + "}");
}

PdmmScheme instantiate(const Construction& construction, const InstantiateOptions& options) {
  if (construction.table.is_cyclic()) return instantiate_cat(construction, options.min_p);
  const auto& prm = construction.params;
  if (construction.family == Family::gasp_r && prm.r &&
      (*prm.r == 1 || *prm.r == std::min(prm.K, prm.T))) {
    return instantiate_degree_table(construction, PointStrategy::roots_of_unity, options);
  }
  return instantiate_degree_table(construction, PointStrategy::random_search, options);
}

PdmmScheme make_scheme(const Construction& construction, PrimeField field, std::vector<FieldElement> rho) {
  PdmmScheme s = bare_scheme(construction, field);
  if (static_cast<i64>(rho.size()) != s.n_workers) {
    throw Error(Errc::count_mismatch, "expected " + std::to_string(s.n_workers) + " evaluation points, got " +
                                          std::to_string(rho.size()));
  }
  std::unordered_set<u64> seen;
  for (FieldElement r : rho) {
    if (r.value == 0 || r.value >= field.modulus() || !seen.insert(r.value).second) {
      throw Error(Errc::parameter_range, "evaluation points must be distinct nonzero field elements");
    }
  }
  s.rho = std::move(rho);
  return s;
}

FieldMatrix scheme_vandermonde(const PdmmScheme& scheme, const Degrees& exponents) {
  return vandermonde(scheme.rho, exponents, scheme.field);
}

FieldMatrix PartitionedMatrix::reassemble() const {
  if (blocks.empty()) throw Error(Errc::dimension_mismatch, "no blocks to reassemble");
  const PrimeField& f = blocks.front().field();
  FieldMatrix out(f, original_rows, original_cols);
  const std::size_t br = blocks.front().rows();
  const std::size_t bc = blocks.front().cols();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t r = 0; r < br; ++r) {
      for (std::size_t c = 0; c < bc; ++c) {
        const std::size_t row = axis == Axis::rows ? b * br + r : r;
        const std::size_t col = axis == Axis::cols ? b * bc + c : c;
        if (row < original_rows && col < original_cols) out(row, col) = blocks[b](r, c);
      }
    }
  }
  return out;
}

PartitionedMatrix partition_a(const FieldMatrix& a, std::size_t k) {
  if (k == 0 || a.rows() == 0 || a.cols() == 0) {
    throw Error(Errc::dimension_mismatch, "partition_a needs a non-empty matrix and K >= 1");
  }
  PartitionedMatrix out;
  out.axis = Axis::rows;
  out.original_rows = a.rows();
  out.original_cols = a.cols();
  const std::size_t br = (a.rows() + k - 1) / k;
  out.padding = br * k - a.rows();
  for (std::size_t b = 0; b < k; ++b) {
    FieldMatrix block(a.field(), br, a.cols());
    for (std::size_t r = 0; r < br && b * br + r < a.rows(); ++r) {
      for (std::size_t c = 0; c < a.cols(); ++c) block(r, c) = a(b * br + r, c);
    }
    out.blocks.push_back(std::move(block));
  }
  return out;
}

PartitionedMatrix partition_b(const FieldMatrix& b, std::size_t l) {
  if (l == 0 || b.rows() == 0 || b.cols() == 0) {
    throw Error(Errc::dimension_mismatch, "partition_b needs a non-empty matrix and L >= 1");
  }
  PartitionedMatrix out;
  out.axis = Axis::cols;
  out.original_rows = b.rows();
  out.original_cols = b.cols();
  const std::size_t bc = (b.cols() + l - 1) / l;
  out.padding = bc * l - b.cols();
  for (std::size_t blk = 0; blk < l; ++blk) {
    FieldMatrix block(b.field(), b.rows(), bc);
    for (std::size_t r = 0; r < b.rows(); ++r) {
      for (std::size_t c = 0; c < bc && blk * bc + c < b.cols(); ++c) block(r, c) = b(r, blk * bc + c);
    }
    out.blocks.push_back(std::move(block));
  }
  return out;
}

Randomness draw_randomness(const PdmmScheme& scheme, std::size_t a_rows, std::size_t a_cols,
                           std::size_t b_rows, std::size_t b_cols, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Randomness rnd;
  rnd.seed = seed;
  rnd.algorithm = SplitMix64::algorithm;
  const auto t = static_cast<std::size_t>(scheme.t_privacy);
  for (std::size_t i = 0; i < t; ++i) rnd.r_mats.push_back(FieldMatrix::random(scheme.field, a_rows, a_cols, rng));
  for (std::size_t i = 0; i < t; ++i) rnd.s_mats.push_back(FieldMatrix::random(scheme.field, b_rows, b_cols, rng));
  return rnd;
}

std::vector<TaskPair> encode(const PdmmScheme& scheme, const std::vector<FieldMatrix>& a_parts,
                             const std::vector<FieldMatrix>& b_parts, const Randomness& rnd) {
  const DegreeVectors& dv = scheme.table();
  const PrimeField& f = scheme.field;
  if (a_parts.empty() || b_parts.empty()) throw Error(Errc::dimension_mismatch, "encode needs blocks");
  const std::size_t ar = a_parts.front().rows(), ac = a_parts.front().cols();
  const std::size_t br = b_parts.front().rows(), bc = b_parts.front().cols();
  const auto t = static_cast<std::size_t>(dv.T());
  require_uniform_shapes(a_parts, static_cast<std::size_t>(dv.K()), ar, ac, f, "A blocks");
  require_uniform_shapes(b_parts, static_cast<std::size_t>(dv.L()), br, bc, f, "B blocks");
  require_uniform_shapes(rnd.r_mats, t, ar, ac, f, "R masks");
  require_uniform_shapes(rnd.s_mats, t, br, bc, f, "S masks");

  std::vector<TaskPair> tasks;
  tasks.reserve(scheme.rho.size());
  for (std::size_t w = 0; w < scheme.rho.size(); ++w) {
    const FieldElement x = scheme.rho[w];
    tasks.push_back({combine(f, a_parts, powers(f, x, dv.alpha_p()), rnd.r_mats, powers(f, x, dv.alpha_s()), ar, ac),
                     combine(f, b_parts, powers(f, x, dv.beta_p()), rnd.s_mats, powers(f, x, dv.beta_s()), br, bc),
                     w});
  }
  return tasks;
}

FieldMatrix worker_multiply(const TaskPair& task) { return task.a_share * task.b_share; }

std::vector<FieldMatrix> run_workers(const std::vector<TaskPair>& tasks) {
  std::vector<FieldMatrix> out;
  out.reserve(tasks.size());
  for (const auto& task : tasks) out.push_back(worker_multiply(task));
  return out;
}

std::vector<FieldMatrix> interpolate(const PdmmScheme& scheme, const std::vector<FieldMatrix>& responses) {
  const auto n = static_cast<std::size_t>(scheme.n_workers);
  if (responses.size() != n) {
    throw Error(Errc::count_mismatch, "expected " + std::to_string(n) + " responses, got " +
                                          std::to_string(responses.size()));
  }
  const std::size_t rows = responses.front().rows(), cols = responses.front().cols();
  require_uniform_shapes(responses, n, rows, cols, scheme.field, "responses");
  const std::size_t width = rows * cols;
  FieldMatrix rhs(scheme.field, n, width);
  for (std::size_t w = 0; w < n; ++w) {
    const auto e = responses[w].entries();
    std::copy(e.begin(), e.end(), &rhs(w, 0));
  }
  const FieldMatrix x = solve(scheme_vandermonde(scheme, scheme.gamma), rhs);
  std::vector<FieldMatrix> coeffs;
  coeffs.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto row = x.row(k);
    coeffs.emplace_back(scheme.field, rows, cols, std::vector<FieldElement>(row.begin(), row.end()));
  }
  return coeffs;
}

FieldMatrix evaluate_product(const PdmmScheme& scheme, const std::vector<FieldMatrix>& coefficients,
                             std::size_t worker) {
  if (coefficients.size() != scheme.gamma.size()) {
    throw Error(Errc::count_mismatch, "one coefficient per exponent of gamma is required");
  }
  if (worker >= scheme.rho.size()) throw Error(Errc::parameter_range, "worker index out of range");
  FieldMatrix out(scheme.field, coefficients.front().rows(), coefficients.front().cols());
  const auto w = powers(scheme.field, scheme.rho[worker], scheme.gamma);
  for (std::size_t k = 0; k < coefficients.size(); ++k) add_scaled(out, coefficients[k], w[k]);
  return out;
}

BlockGrid decode(const PdmmScheme& scheme, const std::vector<FieldMatrix>& responses) {
  const std::vector<FieldMatrix> coeffs = interpolate(scheme, responses);
  const DegreeVectors& dv = scheme.table();
  BlockGrid grid(dv.alpha_p().size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (i64 bp : dv.beta_p()) {
      const i64 e = dv.sum(dv.alpha_p()[i], bp);
      const auto it = std::lower_bound(scheme.gamma.begin(), scheme.gamma.end(), e);
      grid[i].push_back(coeffs[static_cast<std::size_t>(it - scheme.gamma.begin())]);
    }
  }
  return grid;
}

FieldMatrix assemble_product(const BlockGrid& grid, std::size_t rows, std::size_t cols) {
  if (grid.empty() || grid.front().empty()) throw Error(Errc::dimension_mismatch, "empty block grid");
  const FieldMatrix& first = grid.front().front();
  const std::size_t br = first.rows(), bc = first.cols();
  if (rows > grid.size() * br || cols > grid.front().size() * bc) {
    throw Error(Errc::dimension_mismatch, "requested product shape exceeds the block grid");
  }
  FieldMatrix out(first.field(), rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = grid[r / br][c / bc](r % br, c % bc);
  }
  return out;
}

PrivacyRankReport verify_privacy_rank(const PdmmScheme& scheme, const SubmatrixOptions& options) {
  const auto t = static_cast<std::size_t>(scheme.t_privacy);
  return {all_txt_submatrices_invertible(scheme_vandermonde(scheme, scheme.table().alpha_s()), t, options),
          all_txt_submatrices_invertible(scheme_vandermonde(scheme, scheme.table().beta_s()), t, options)};
}

PrivacyExhaustiveReport verify_privacy_exhaustive(const PdmmScheme& scheme, const PrivacyTrials& trials) {
  const DegreeVectors& dv = scheme.table();
  const auto n = scheme.rho.size();
  const auto t = static_cast<std::size_t>(dv.T());
  PrivacyExhaustiveReport rep;
  if (t == 0 || t > n) return rep;

  const u64 p = scheme.field.modulus();
  const u64 subsets = trials.sampled ? *trials.sampled : binomial_saturating(n, t);
  const u64 outcomes = saturating_pow(p, t);
  const u64 cost_a = saturating_mul(subsets, saturating_mul(saturating_pow(p, static_cast<u64>(dv.K())), outcomes));
  const u64 cost_b = saturating_mul(subsets, saturating_mul(saturating_pow(p, static_cast<u64>(dv.L())), outcomes));
  if (cost_a > trials.budget || cost_b > trials.budget || outcomes > (u64{1} << 28)) {
    throw Error(Errc::budget_exceeded, "enumeration needs more than " + std::to_string(trials.budget) +
                                           " evaluations per side");
  }

  std::vector<std::vector<std::size_t>> chosen;
  if (trials.sampled) {
    SplitMix64 rng(trials.seed);
    for (u64 i = 0; i < subsets; ++i) chosen.push_back(sample_subset(rng, n, t));
  } else {
    std::vector<std::size_t> rows(t);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    for (;;) {
      chosen.push_back(rows);
      std::size_t i = t;
      while (i > 0 && rows[i - 1] == n - t + (i - 1)) --i;
      if (i == 0) break;
      ++rows[i - 1];
      for (std::size_t k = i; k < t; ++k) rows[k] = rows[k - 1] + 1;
    }
  }
  check_side(scheme, dv.alpha_p(), dv.alpha_s(), chosen, trials.witness_limit, rep.a);
  check_side(scheme, dv.beta_p(), dv.beta_s(), chosen, trials.witness_limit, rep.b);
  return rep;
}

}  // namespace pdmm
