// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdmm/serialize.hpp"

#include <string>

#include "pdmm/error.hpp"

namespace pdmm {
namespace {

using i64 = std::int64_t;

void put_header(ojson& j, const Construction& c) {
  j["family"] = std::string(family_token(c.family));
  j["K"] = c.params.K;
  j["L"] = c.params.L;
  j["T"] = c.params.T;
  if (c.params.r) j["r"] = *c.params.r;
  if (c.params.s) j["s"] = *c.params.s;
  if (c.params.x) j["x"] = *c.params.x;
  if (c.table.modulus()) j["q"] = *c.table.modulus();
}

void put_vectors(ojson& j, const Construction& c) {
  j["alpha_p"] = c.table.alpha_p();
  j["alpha_s"] = c.table.alpha_s();
  j["beta_p"] = c.table.beta_p();
  j["beta_s"] = c.table.beta_s();
  j["N"] = count_unique(c.table);
}

template <typename T>
std::optional<T> optional_field(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  try {
    return doc[key].get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

ojson describe_construction(const Construction& c) {
  ojson j;
  put_header(j, c);
  put_vectors(j, c);
  return j;
}

ojson describe_scheme(const PdmmScheme& s) {
  ojson j;
  put_header(j, s.construction);
  j["p"] = s.field.modulus();
  if (s.omega) j["omega"] = s.omega->value;
  ojson rho = ojson::array();
  for (FieldElement r : s.rho) rho.push_back(r.value);
  j["rho"] = std::move(rho);
  put_vectors(j, s.construction);
  return j;
}

ojson describe_validation(const ValidationReport& rep) {
  ojson j;
  ojson conditions;
  for (Condition c : {Condition::I, Condition::II, Condition::IIIa, Condition::IIIb, Condition::IIIc,
                      Condition::IV}) {
    conditions[std::string(condition_name(c))] = rep.passed(c) ? "pass" : "fail";
  }
  j["conditions"] = std::move(conditions);
  j["N"] = rep.n_unique;
  ojson witnesses = ojson::array();
  for (const Witness& w : rep.witnesses) {
    witnesses.push_back({{"condition", std::string(condition_name(w.condition))}, {"where", w.where}, {"value", w.value}});
  }
  j["witnesses"] = std::move(witnesses);
  j["valid"] = rep.valid();
  return j;
}

SchemeDescription parse_description(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(Errc::parse_error, "description must be a JSON object");
  const auto token = optional_field<std::string>(doc, "family").value_or("custom");
  const auto family = parse_family(token);
  if (!family) throw Error(Errc::parse_error, "unknown family '" + token + "'");

  ConstructionParams params;
  params.K = optional_field<i64>(doc, "K").value_or(0);
  params.L = optional_field<i64>(doc, "L").value_or(0);
  params.T = optional_field<i64>(doc, "T").value_or(0);
  params.r = optional_field<i64>(doc, "r");
  params.s = optional_field<i64>(doc, "s");
  params.x = optional_field<i64>(doc, "x");

  const auto ap = optional_field<Degrees>(doc, "alpha_p");
  const auto as = optional_field<Degrees>(doc, "alpha_s");
  const auto bp = optional_field<Degrees>(doc, "beta_p");
  const auto bs = optional_field<Degrees>(doc, "beta_s");
  const bool have_vectors = ap || as || bp || bs;

  std::optional<Construction> construction;
  if (have_vectors) {
    if (!ap || !as || !bp || !bs) {
      throw Error(Errc::parse_error, "alpha_p, alpha_s, beta_p and beta_s must appear together");
    }
    DegreeVectors table(*ap, *as, *bp, *bs, optional_field<i64>(doc, "q"));
    if (*family != Family::custom) {
      try {
        Construction named = construct(*family, params);
        if (named.table == table) construction = std::move(named);
      } catch (const Error&) {
      }
    }
    if (!construction) construction = custom_construction(std::move(table));
  } else {
    if (*family == Family::custom) throw Error(Errc::parse_error, "custom tables need explicit vectors");
    construction = construct(*family, params);
  }

  SchemeDescription d{std::move(*construction), optional_field<std::uint64_t>(doc, "p"),
                      optional_field<std::uint64_t>(doc, "omega"),
                      optional_field<std::vector<std::uint64_t>>(doc, "rho").value_or(std::vector<std::uint64_t>{})};
  if (auto n = optional_field<i64>(doc, "N"); n && *n != count_unique(d.construction.table)) {
    throw Error(Errc::parse_error, "declared N=" + std::to_string(*n) + " does not match the table");
  }
  return d;
}

SchemeDescription parse_description_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::parse_error, e.what());
  }
  return parse_description(doc);
}

PdmmScheme scheme_from_description(const SchemeDescription& d) {
  if (!d.p || d.rho.empty()) throw Error(Errc::parse_error, "description lacks p or rho");
  std::vector<FieldElement> rho;
  rho.reserve(d.rho.size());
  for (auto v : d.rho) rho.push_back({v});
  PdmmScheme s = make_scheme(d.construction, PrimeField(*d.p), std::move(rho));
  if (d.omega) {
    s.omega = FieldElement{*d.omega};
    if (d.construction.table.modulus()) s.root_order = *d.construction.table.modulus();
  }
  return s;
}

}  // namespace pdmm
