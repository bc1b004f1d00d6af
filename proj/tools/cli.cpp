// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pdmm/degrees.hpp"
#include "pdmm/error.hpp"
#include "pdmm/random.hpp"
#include "pdmm/scheme.hpp"
#include "pdmm/search.hpp"
#include "pdmm/serialize.hpp"

namespace pdmm::cli {
namespace {

using i64 = std::int64_t;

enum class Format { json, csv, pretty };

struct CliConfig {
  std::string family;
  i64 K = 0;
  i64 L = 0;
  i64 T = 0;
  i64 r = 0;
  i64 s = 0;
  i64 x = 0;
  bool has_r = false;
  bool has_s = false;
  bool has_x = false;
  std::uint64_t seed = 0;
  std::uint64_t min_p = 0;
  std::string format;
  std::string output;
  std::string table;
  std::string dims = "4x4x4";
  std::string strategy = "auto";
  std::string k_range;
  std::string l_range;
  std::string t_range;
  std::string mode = "KequalsL";
  unsigned threads = 0;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Format parse_format(const std::string& token) {
  if (token == "json") return Format::json;
  if (token == "csv") return Format::csv;
  if (token == "pretty") return Format::pretty;
  throw UsageError("unknown format '" + token + "' (expected json, csv or pretty)");
}

Format resolve_format(const CliConfig& cfg) {
  if (!cfg.format.empty()) return parse_format(cfg.format);
  if (const char* env = std::getenv("PDMM_FORMAT"); env != nullptr && *env != '\0') return parse_format(env);
  return Format::pretty;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Construction construction_from_flags(const CliConfig& cfg) {
  if (cfg.family.empty()) throw UsageError("--family is required unless --table is given");
  ConstructionParams p;
  p.K = cfg.K;
  p.L = cfg.L;
  p.T = cfg.T;
  if (cfg.has_r) p.r = cfg.r;
  if (cfg.has_s) p.s = cfg.s;
  if (cfg.has_x) p.x = cfg.x;
  if (cfg.family == "gasp-small" || cfg.family == "gasp-big") {
    p.r = cfg.family == "gasp-small" ? 1 : std::min(cfg.K, cfg.T);
    return construct(Family::gasp_r, p);
  }
  const auto family = parse_family(cfg.family);
  if (!family || *family == Family::custom) {
    throw UsageError("unknown family '" + cfg.family + "' (catx, gasp-r, gasp-rs, dog-rs, gasp-small, gasp-big)");
  }
  return construct(*family, p);
}

SchemeDescription description_from_config(const CliConfig& cfg) {
  if (!cfg.table.empty()) return parse_description_text(read_file(cfg.table));
  return {construction_from_flags(cfg), std::nullopt, std::nullopt, {}};
}

ValidationReport validate(const DegreeVectors& dv) {
  return dv.is_cyclic() ? validate_cat(dv) : validate_degree_table(dv);
}

IntRange parse_range(const std::string& text, const char* name) {
  IntRange r;
  std::vector<i64> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(name) + " range '" + text + "' is not lo[:hi[:step]]");
    }
  }
  if (parts.empty() || parts.size() > 3) throw UsageError(std::string(name) + " range '" + text + "' is not lo[:hi[:step]]");
  r.lo = parts[0];
  r.hi = parts.size() > 1 ? parts[1] : parts[0];
  r.step = parts.size() > 2 ? parts[2] : 1;
  if (r.lo > r.hi || r.step < 1) throw UsageError(std::string(name) + " range '" + text + "' is empty");
  return r;
}

std::array<std::size_t, 3> parse_dims(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, 'x');) parts.push_back(item);
  std::array<std::size_t, 3> d{};
  bool ok = parts.size() == 3 && text.back() != 'x';
  for (std::size_t i = 0; ok && i < 3; ++i) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(parts[i], &used);
      ok = used == parts[i].size() && v >= 1;
      d[i] = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      ok = false;
    }
  }
  if (!ok) throw UsageError("--dims must be RAxCAxCB with positive integers");
  return d;
}

std::string optional_cell(const std::optional<i64>& v) { return v ? std::to_string(*v) : std::string(); }

void print_table(std::ostream& out, const DegreeVectors& dv, Format fmt) {
  const Degrees alpha = dv.alpha();
  const Degrees beta = dv.beta();
  if (fmt == Format::csv) {
    out << "+";
    for (i64 b : beta) out << ',' << b;
    out << '\n';
    for (i64 a : alpha) {
      out << a;
      for (i64 b : beta) out << ',' << dv.sum(a, b);
      out << '\n';
    }
    out << "N," << count_unique(dv) << '\n';
    return;
  }
  i64 widest = 1;
  for (i64 a : alpha) {
    widest = std::max<i64>(widest, static_cast<i64>(std::to_string(a).size()));
    for (i64 b : beta) widest = std::max<i64>(widest, static_cast<i64>(std::to_string(dv.sum(a, b)).size()));
  }
  for (i64 b : beta) widest = std::max<i64>(widest, static_cast<i64>(std::to_string(b).size()));
  const int w = static_cast<int>(widest);
  const std::size_t k = dv.alpha_p().size();
  const std::size_t l = dv.beta_p().size();
  out << std::setw(w) << (dv.is_cyclic() ? "%" : "+") << " |";
  for (std::size_t j = 0; j < beta.size(); ++j) out << (j == l ? " |" : "") << ' ' << std::setw(w) << beta[j];
  out << '\n' << std::string(static_cast<std::size_t>(w) + 1, '-') << '+'
      << std::string(beta.size() * static_cast<std::size_t>(w + 1) + (beta.size() > l ? 2 : 0), '-') << '\n';
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i == k && i > 0) {
      out << std::string(static_cast<std::size_t>(w) + 1, '-') << '+'
          << std::string(beta.size() * static_cast<std::size_t>(w + 1) + (beta.size() > l ? 2 : 0), '-') << '\n';
    }
    out << std::setw(w) << alpha[i] << " |";
    for (std::size_t j = 0; j < beta.size(); ++j) {
      out << (j == l ? " |" : "") << ' ' << std::setw(w) << dv.sum(alpha[i], beta[j]);
    }
    out << '\n';
  }
  if (dv.is_cyclic()) out << "q = " << *dv.modulus() << '\n';
  out << "N = " << count_unique(dv) << '\n';
}

int cmd_construct(const CliConfig& cfg, Format fmt, std::ostream& out) {
  const Construction c = construction_from_flags(cfg);
  if (fmt == Format::json) {
    out << describe_construction(c).dump(2) << '\n';
  } else {
    print_table(out, c.table, fmt);
  }
  return kOk;
}

int cmd_validate(const CliConfig& cfg, Format fmt, std::ostream& out) {
  const SchemeDescription d = description_from_config(cfg);
  const ValidationReport rep = validate(d.construction.table);
  std::optional<PrivacyRankReport> rank;
  if (d.p && !d.rho.empty()) rank = verify_privacy_rank(scheme_from_description(d));
  const bool ok = rep.valid() && (!rank || rank->passed());

  if (fmt == Format::json) {
    ojson j = describe_validation(rep);
    if (rank) {
      ojson pr;
      pr["passed"] = rank->passed();
      ojson wit = ojson::array();
      for (const auto* side : {&rank->alpha, &rank->beta}) {
        for (const auto& rows : side->singular_rows) wit.push_back(rows);
      }
      pr["singular_subsets"] = std::move(wit);
      j["privacy_rank"] = std::move(pr);
    }
    out << j.dump(2) << '\n';
  } else {
    const char sep = fmt == Format::csv ? ',' : ' ';
    if (fmt == Format::csv) out << "condition,result\n";
    for (Condition c : {Condition::I, Condition::II, Condition::IIIa, Condition::IIIb, Condition::IIIc,
                        Condition::IV}) {
      out << (fmt == Format::csv ? "" : "condition ") << condition_name(c) << (fmt == Format::csv ? "" : ":")
          << sep << (rep.passed(c) ? "pass" : "fail") << '\n';
    }
    if (fmt == Format::pretty) {
      for (const Witness& w : rep.witnesses) {
        out << "  witness " << condition_name(w.condition) << " at " << w.where << ": " << w.value << '\n';
      }
      out << "N = " << rep.n_unique << '\n';
      if (rank) {
        out << "privacy rank: " << (rank->passed() ? "pass" : "fail") << '\n';
        for (const auto* side : {&rank->alpha, &rank->beta}) {
          for (const auto& rows : side->singular_rows) {
            out << "  singular workers {";
            for (std::size_t i = 0; i < rows.size(); ++i) out << (i ? "," : "") << rows[i];
            out << "}\n";
          }
        }
      }
      out << (ok ? "valid" : "invalid") << '\n';
    } else if (rank) {
      out << "privacy_rank," << (rank->passed() ? "pass" : "fail") << '\n';
    }
  }
  return ok ? kOk : kFailure;
}

PdmmScheme scheme_for_simulation(const CliConfig& cfg) {
  const SchemeDescription d = description_from_config(cfg);
  if (d.p && !d.rho.empty()) return scheme_from_description(d);
  InstantiateOptions opt;
  opt.min_p = cfg.min_p;
  opt.seed = cfg.seed;
  if (cfg.strategy == "auto") return instantiate(d.construction, opt);
  if (cfg.strategy == "roots-of-unity") {
    if (d.construction.table.is_cyclic()) return instantiate_cat(d.construction, cfg.min_p);
    return instantiate_degree_table(d.construction, PointStrategy::roots_of_unity, opt);
  }
  if (cfg.strategy == "random-search") {
    return instantiate_degree_table(d.construction, PointStrategy::random_search, opt);
  }
  throw UsageError("unknown strategy '" + cfg.strategy + "' (auto, roots-of-unity, random-search)");
}

int cmd_simulate(const CliConfig& cfg, Format fmt, std::ostream& out) {
  const auto [ra, ca, cb] = parse_dims(cfg.dims);
  const PdmmScheme scheme = scheme_for_simulation(cfg);
  const DegreeVectors& dv = scheme.table();

  SplitMix64 rng(cfg.seed);
  const FieldMatrix a = FieldMatrix::random(scheme.field, ra, ca, rng);
  const FieldMatrix b = FieldMatrix::random(scheme.field, ca, cb, rng);
  const PartitionedMatrix pa = partition_a(a, static_cast<std::size_t>(dv.K()));
  const PartitionedMatrix pb = partition_b(b, static_cast<std::size_t>(dv.L()));
  const FieldMatrix& a0 = pa.blocks.front();
  const FieldMatrix& b0 = pb.blocks.front();
  const Randomness rnd = draw_randomness(scheme, a0.rows(), a0.cols(), b0.rows(), b0.cols(), cfg.seed + 1);
  const auto tasks = encode(scheme, pa.blocks, pb.blocks, rnd);
  const auto responses = run_workers(tasks);
  const FieldMatrix product = assemble_product(decode(scheme, responses), ra, cb);
  const bool exact = product == a * b;
  const PrivacyRankReport rank = verify_privacy_rank(scheme);
  const bool exhaustive = rank.alpha.exhaustive && rank.beta.exhaustive;

  if (fmt == Format::json) {
    ojson j;
    j["scheme"] = describe_scheme(scheme);
    j["strategy"] = std::string(strategy_token(scheme.strategy));
    j["rng"] = std::string(SplitMix64::algorithm);
    j["seed"] = cfg.seed;
    if (scheme.root_order) j["root_order"] = *scheme.root_order;
    j["dims"] = {ra, ca, cb};
    j["padding_a"] = pa.padding;
    j["padding_b"] = pb.padding;
    j["a_share"] = {a0.rows(), a0.cols()};
    j["b_share"] = {b0.rows(), b0.cols()};
    j["decode_exact"] = exact;
    j["privacy_rank"] = rank.passed();
    j["privacy_rank_exhaustive"] = exhaustive;
    out << j.dump(2) << '\n';
  } else if (fmt == Format::csv) {
    out << "family,K,L,T,p,q,N,strategy,padding_a,padding_b,decode,privacy_rank\n"
        << family_token(scheme.construction.family) << ',' << dv.K() << ',' << dv.L() << ',' << dv.T() << ','
        << scheme.field.modulus() << ',' << optional_cell(scheme.root_order) << ',' << scheme.n_workers << ','
        << strategy_token(scheme.strategy) << ',' << pa.padding << ',' << pb.padding << ','
        << (exact ? "exact" : "mismatch") << ',' << (rank.passed() ? "pass" : "fail") << '\n';
  } else {
    out << "family: " << family_token(scheme.construction.family) << " (K=" << dv.K() << ", L=" << dv.L()
        << ", T=" << dv.T() << ")\n";
    out << "p = " << scheme.field.modulus() << '\n';
    if (scheme.root_order) out << "q = " << *scheme.root_order << ", omega = " << scheme.omega->value << '\n';
    out << "N = " << scheme.n_workers << '\n';
    out << "points: " << strategy_token(scheme.strategy);
    if (scheme.strategy == PointStrategy::random_search) out << " (seed " << cfg.seed << ", verified)";
    out << '\n';
    out << "A: " << ra << "x" << ca << ", padding " << pa.padding << " row(s)\n";
    out << "B: " << ca << "x" << cb << ", padding " << pb.padding << " column(s)\n";
    out << "tasks: " << tasks.size() << " workers, a_share " << a0.rows() << "x" << a0.cols() << ", b_share "
        << b0.rows() << "x" << b0.cols() << '\n';
    out << "decode: " << (exact ? "exact match" : "MISMATCH") << '\n';
    out << "privacy rank: " << (rank.passed() ? "pass" : "fail") << (exhaustive ? " (exhaustive)" : " (sampled)")
        << '\n';
  }
  return exact && rank.passed() ? kOk : kFailure;
}

ojson choice_json(const SchemeChoice& c) {
  ojson j;
  j["family"] = std::string(scheme_family_token(c.family));
  if (c.r) j["r"] = *c.r;
  if (c.s) j["s"] = *c.s;
  if (c.x) j["x"] = *c.x;
  j["N"] = c.n_workers;
  j["transposed"] = c.transposed;
  return j;
}

ojson ratio_json(const Ratio& r) {
  ojson j;
  j["num"] = r.num;
  j["den"] = r.den;
  j["percent"] = r.percent();
  return j;
}

ojson record_json(const SweepRecord& rec) {
  ojson j;
  j["K"] = rec.K;
  j["L"] = rec.L;
  j["T"] = rec.T;
  j["catx"] = rec.catx ? choice_json(*rec.catx) : ojson(nullptr);
  j["gasp_r"] = choice_json(rec.gasp_r);
  j["gasp_rs"] = choice_json(rec.gasp_rs);
  j["dog_rs"] = choice_json(rec.dog_rs);
  j["polegap"] = "n/a";
  j["winner"] = std::string(scheme_family_token(rec.winner));
  j["margin"] = rec.margin;
  j["saving_dog_rs"] = ratio_json(rec.saving_dog_rs);
  j["saving_gasp_rs"] = ratio_json(rec.saving_gasp_rs);
  j["improvement_dog_rs"] = ratio_json(rec.improvement_dog_rs);
  j["improvement_gasp_rs"] = ratio_json(rec.improvement_gasp_rs);
  return j;
}

constexpr const char* kCsvHeader =
    "K,L,T,N_catx,N_gaspr,r_gaspr,N_gasprs,r_gasprs,s_gasprs,N_dogrs,r_dogrs,s_dogrs,winner,margin";

void csv_row(std::ostream& out, const SweepRecord& rec) {
  out << rec.K << ',' << rec.L << ',' << rec.T << ','
      << (rec.catx ? std::to_string(rec.catx->n_workers) : std::string()) << ',' << rec.gasp_r.n_workers << ','
      << optional_cell(rec.gasp_r.r) << ',' << rec.gasp_rs.n_workers << ',' << optional_cell(rec.gasp_rs.r) << ','
      << optional_cell(rec.gasp_rs.s) << ',' << rec.dog_rs.n_workers << ',' << optional_cell(rec.dog_rs.r) << ','
      << optional_cell(rec.dog_rs.s) << ',' << scheme_family_token(rec.winner) << ',' << rec.margin << '\n';
}

int cmd_sweep(const CliConfig& cfg, Format fmt, std::ostream& out) {
  const auto mode = parse_sweep_mode(cfg.mode);
  if (!mode) throw UsageError("unknown mode '" + cfg.mode + "' (KequalsL, full, diagonal)");
  if (cfg.k_range.empty()) throw UsageError("--K-range is required");
  const IntRange k = parse_range(cfg.k_range, "K");
  const IntRange l = cfg.l_range.empty() ? k : parse_range(cfg.l_range, "L");
  if (*mode != SweepMode::diagonal && cfg.t_range.empty()) throw UsageError("--T-range is required");
  const IntRange t = cfg.t_range.empty() ? k : parse_range(cfg.t_range, "T");
  const auto records = sweep(k, l, t, *mode, cfg.threads);
  if (fmt == Format::json) {
    ojson arr = ojson::array();
    for (const auto& rec : records) arr.push_back(record_json(rec));
    out << arr.dump(2) << '\n';
  } else {
    out << kCsvHeader << '\n';
    for (const auto& rec : records) csv_row(out, rec);
  }
  return kOk;
}

int cmd_search(const CliConfig& cfg, Format fmt, std::ostream& out) {
  const SweepRecord rec = best_scheme(cfg.K, cfg.L, cfg.T);
  if (fmt == Format::json) {
    out << record_json(rec).dump(2) << '\n';
  } else if (fmt == Format::csv) {
    out << kCsvHeader << '\n';
    csv_row(out, rec);
  } else {
    out << "K=" << rec.K << " L=" << rec.L << " T=" << rec.T << '\n';
    const auto line = [&](const std::optional<SchemeChoice>& c, const char* name) {
      out << "  " << std::left << std::setw(8) << name << std::right;
      if (!c) {
        out << "n/a\n";
        return;
      }
      out << "N=" << c->n_workers;
      if (c->r) out << " r=" << *c->r;
      if (c->s) out << " s=" << *c->s;
      if (c->x) out << " x=" << *c->x;
      if (c->transposed) out << " (transposed)";
      out << '\n';
    };
    line(rec.catx, "CATX");
    line(rec.dog_rs, "DOG_RS");
    line(rec.gasp_rs, "GASP_RS");
    line(rec.gasp_r, "GASP_R");
    out << "  PoleGap n/a\n";
    out << "winner: " << scheme_family_token(rec.winner) << " (N=" << rec.winner_n() << ", margin " << rec.margin
        << ")\n";
    out << std::fixed << std::setprecision(2) << "saving over GASP_R: DOG_RS " << rec.saving_dog_rs.percent()
        << "%, GASP_RS " << rec.saving_gasp_rs.percent() << "%\n";
  }
  return kOk;
}

void add_problem_options(CLI::App* sub, CliConfig& cfg, bool with_family) {
  if (with_family) {
    sub->add_option("--family", cfg.family, "catx, gasp-r, gasp-rs, dog-rs, gasp-small or gasp-big");
  }
  sub->add_option("-K", cfg.K, "number of row blocks of A");
  sub->add_option("-L", cfg.L, "number of column blocks of B");
  sub->add_option("-T", cfg.T, "collusion threshold");
  if (with_family) {
    sub->add_option("-r", cfg.r, "chain length r")->each([&](const std::string&) { cfg.has_r = true; });
    sub->add_option("-s", cfg.s, "chain length s")->each([&](const std::string&) { cfg.has_s = true; });
    sub->add_option("-x", cfg.x, "CAT_x step x")->each([&](const std::string&) { cfg.has_x = true; });
  }
}

void add_output_options(CLI::App* sub, CliConfig& cfg) {
  sub->add_option("--format", cfg.format, "json, csv or pretty (default: $PDMM_FORMAT or pretty)");
  sub->add_option("-o,--output", cfg.output, "write to a file instead of standard output");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Private distributed matrix multiplication with polynomial codes", "pdmm"};
  app.require_subcommand(1);

  auto* construct_cmd = app.add_subcommand("construct", "print a degree table and its worker count");
  add_problem_options(construct_cmd, cfg, true);
  add_output_options(construct_cmd, cfg);

  auto* validate_cmd = app.add_subcommand("validate", "check the private-and-decodable conditions");
  add_problem_options(validate_cmd, cfg, true);
  validate_cmd->add_option("--table", cfg.table, "JSON table file");
  add_output_options(validate_cmd, cfg);

  auto* simulate_cmd = app.add_subcommand("simulate", "run encode, workers and decode on random inputs");
  add_problem_options(simulate_cmd, cfg, true);
  simulate_cmd->add_option("--table", cfg.table, "JSON table file");
  simulate_cmd->add_option("--dims", cfg.dims, "RAxCAxCB");
  simulate_cmd->add_option("--seed", cfg.seed, "seed for inputs, masks and point search");
  simulate_cmd->add_option("--min-p", cfg.min_p, "lower bound on the field size");
  simulate_cmd->add_option("--strategy", cfg.strategy, "auto, roots-of-unity or random-search");
  add_output_options(simulate_cmd, cfg);

  auto* sweep_cmd = app.add_subcommand("sweep", "best parameters over a grid");
  sweep_cmd->add_option("--K-range", cfg.k_range, "lo[:hi[:step]]");
  sweep_cmd->add_option("--L-range", cfg.l_range, "lo[:hi[:step]] (full mode)");
  sweep_cmd->add_option("--T-range", cfg.t_range, "lo[:hi[:step]]");
  sweep_cmd->add_option("--mode", cfg.mode, "KequalsL, full or diagonal");
  sweep_cmd->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
  add_output_options(sweep_cmd, cfg);

  auto* search_cmd = app.add_subcommand("search", "compare the families at one point");
  add_problem_options(search_cmd, cfg, false);
  add_output_options(search_cmd, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  try {
    const Format fmt = resolve_format(cfg);
    if (!cfg.output.empty()) {
      file.open(cfg.output);
      if (!file) throw UsageError("cannot write '" + cfg.output + "'");
      sink = &file;
    }
    if (*construct_cmd) return cmd_construct(cfg, fmt, *sink);
    if (*validate_cmd) return cmd_validate(cfg, fmt, *sink);
    if (*simulate_cmd) return cmd_simulate(cfg, fmt, *sink);
    if (*sweep_cmd) return cmd_sweep(cfg, fmt, *sink);
    if (*search_cmd) return cmd_search(cfg, fmt, *sink);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.code()) {
      case Errc::parameter_range:
      case Errc::parameter_order:
      case Errc::not_coprime:
      case Errc::parse_error:
        return kUsage;
      default:
        return kFailure;
    }
  }
  return kUsage;
}

}  // namespace pdmm::cli
