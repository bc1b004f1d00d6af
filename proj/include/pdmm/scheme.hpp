// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pdmm/degrees.hpp"
#include "pdmm/field.hpp"
#include "pdmm/linalg.hpp"

namespace pdmm {

/// How the evaluation points of a scheme were obtained.
enum class PointStrategy { roots_of_unity, random_search, explicit_points };

std::string_view strategy_token(PointStrategy s) noexcept;

/// A degree table bound to a field and evaluation points.
struct PdmmScheme {
  Construction construction;
  PrimeField field;
  /// Element of order `root_order` when rho is a run of consecutive powers.
  std::optional<FieldElement> omega;
  std::optional<std::int64_t> root_order;
  std::vector<FieldElement> rho;
  /// Sorted distinct exponents of H(x) = F(x) G(x).
  Degrees gamma;
  std::int64_t n_workers = 0;
  std::int64_t t_privacy = 0;
  PointStrategy strategy = PointStrategy::explicit_points;
  /// Primes tried before the accepted one (random_search only).
  std::vector<std::uint64_t> rejected_primes;

  const DegreeVectors& table() const noexcept { return construction.table; }
};

struct InstantiateOptions {
  std::uint64_t min_p = 0;
  std::uint64_t seed = 0;
  std::uint32_t attempts_per_prime = 32;
  std::uint32_t max_primes = 48;
  /// Subset budget for the T x T checks performed while searching.
  std::uint64_t submatrix_budget = 20'000'000;
};

/// Consecutive powers of an order-q element; the table must satisfy validate_cat.
PdmmScheme instantiate_cat(const Construction& construction, std::uint64_t min_p = 0);
PdmmScheme instantiate_cat(const DegreeVectors& table, std::uint64_t min_p = 0);

/// Evaluation points for an integer table. roots_of_unity is only defined for
/// GASP_small (r = 1) and GASP_big (r = min(K, T)); random_search samples points
/// until V(rho, gamma) is invertible and every T x T check passes.
PdmmScheme instantiate_degree_table(const Construction& construction, PointStrategy strategy,
                                    const InstantiateOptions& options = {});

/// CAT tables via instantiate_cat, GASP_small/GASP_big via roots of unity,
/// everything else via random_search.
PdmmScheme instantiate(const Construction& construction, const InstantiateOptions& options = {});

/// Wraps caller-chosen points without verifying them.
PdmmScheme make_scheme(const Construction& construction, PrimeField field, std::vector<FieldElement> rho);

/// Evaluation-point matrix V(rho, e) for an exponent vector of the scheme's table.
FieldMatrix scheme_vandermonde(const PdmmScheme& scheme, const Degrees& exponents);

enum class Axis { rows, cols };

struct PartitionedMatrix {
  std::vector<FieldMatrix> blocks;
  Axis axis = Axis::rows;
  std::size_t original_rows = 0;
  std::size_t original_cols = 0;
  /// Zero rows (or columns) appended before splitting.
  std::size_t padding = 0;

  /// Concatenates the blocks and drops the padding.
  FieldMatrix reassemble() const;
};

/// Splits A into K horizontal blocks after zero-padding its rows.
PartitionedMatrix partition_a(const FieldMatrix& a, std::size_t k);
/// Splits B into L vertical blocks after zero-padding its columns.
PartitionedMatrix partition_b(const FieldMatrix& b, std::size_t l);

struct Randomness {
  std::vector<FieldMatrix> r_mats;
  std::vector<FieldMatrix> s_mats;
  std::uint64_t seed = 0;
  std::string_view algorithm;
};

/// T masks shaped like an A block followed by T masks shaped like a B block,
/// all from one SplitMix64 stream.
Randomness draw_randomness(const PdmmScheme& scheme, std::size_t a_rows, std::size_t a_cols,
                           std::size_t b_rows, std::size_t b_cols, std::uint64_t seed);

struct TaskPair {
  FieldMatrix a_share;
  FieldMatrix b_share;
  std::size_t worker = 0;
};

std::vector<TaskPair> encode(const PdmmScheme& scheme, const std::vector<FieldMatrix>& a_parts,
                             const std::vector<FieldMatrix>& b_parts, const Randomness& rnd);

FieldMatrix worker_multiply(const TaskPair& task);

/// Runs every worker; responses are indexed by worker.
std::vector<FieldMatrix> run_workers(const std::vector<TaskPair>& tasks);

/// Coefficient matrices of H(x), one per entry of gamma.
std::vector<FieldMatrix> interpolate(const PdmmScheme& scheme, const std::vector<FieldMatrix>& responses);

/// H(rho_w) for coefficients ordered as gamma.
FieldMatrix evaluate_product(const PdmmScheme& scheme, const std::vector<FieldMatrix>& coefficients,
                             std::size_t worker);

using BlockGrid = std::vector<std::vector<FieldMatrix>>;

/// grid[i][j] = A_i B_j recovered from exactly N responses.
BlockGrid decode(const PdmmScheme& scheme, const std::vector<FieldMatrix>& responses);

/// Stitches a K x L grid of blocks and crops to rows x cols.
FieldMatrix assemble_product(const BlockGrid& grid, std::size_t rows, std::size_t cols);

struct PrivacyRankReport {
  SubmatrixCheck alpha;
  SubmatrixCheck beta;

  bool passed() const noexcept { return alpha.passed() && beta.passed(); }
};

PrivacyRankReport verify_privacy_rank(const PdmmScheme& scheme, const SubmatrixOptions& options = {});

struct PrivacyTrials {
  /// Absent means every T-subset of workers.
  std::optional<std::uint64_t> sampled;
  std::uint64_t seed = 0;
  std::uint64_t budget = 2'000'000'000;
  std::size_t witness_limit = 64;

  static PrivacyTrials full() { return {}; }
  static PrivacyTrials sample(std::uint64_t n, std::uint64_t seed = 0) { return {n, seed}; }
};

struct SideDistribution {
  /// Worker subsets whose task distribution was not uniform for some data value.
  std::vector<std::vector<std::size_t>> nonuniform;
  std::uint64_t subsets = 0;
  std::uint64_t data_values = 0;
  std::uint64_t outcomes = 0;
  std::uint64_t evaluations = 0;
};

struct PrivacyExhaustiveReport {
  SideDistribution a;
  SideDistribution b;

  bool passed() const noexcept { return a.nonuniform.empty() && b.nonuniform.empty(); }
};

/// Scalar (1 x 1 block) model: for each chosen T-subset and each data value,
/// enumerates all masks and checks the joint task distribution is uniform over
/// F_p^T. Throws Errc::budget_exceeded when the enumeration is larger than
/// trials.budget.
PrivacyExhaustiveReport verify_privacy_exhaustive(const PdmmScheme& scheme,
                                                  const PrivacyTrials& trials = PrivacyTrials::full());

}  // namespace pdmm
