// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pdmm/degrees.hpp"
#include "pdmm/error.hpp"
#include "pdmm/field.hpp"
#include "pdmm/random.hpp"
#include "pdmm/scheme.hpp"
#include "pdmm/search.hpp"
#include "pdmm/serialize.hpp"

namespace py = pybind11;
using namespace pdmm;

namespace {

using IntGrid = std::vector<std::vector<std::int64_t>>;

py::object to_python(const ojson& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Family family_from(std::string token) {
  std::replace(token.begin(), token.end(), '_', '-');
  const auto f = parse_family(token);
  if (!f || *f == Family::custom) throw py::value_error("unknown family '" + token + "'");
  return *f;
}

FieldMatrix matrix_from(const PrimeField& f, const IntGrid& rows) {
  if (rows.empty() || rows.front().empty()) throw py::value_error("matrices must be non-empty");
  std::vector<std::int64_t> flat;
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw py::value_error("ragged matrix");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return FieldMatrix::from_integers(f, rows.size(), rows.front().size(), flat);
}

IntGrid matrix_to(const FieldMatrix& m) {
  IntGrid out(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = static_cast<std::int64_t>(m(r, c).value);
  }
  return out;
}

// Full pipeline on caller-supplied integer matrices.
IntGrid multiply(const PdmmScheme& s, const IntGrid& a_rows, const IntGrid& b_rows, std::uint64_t seed) {
  const FieldMatrix a = matrix_from(s.field, a_rows);
  const FieldMatrix b = matrix_from(s.field, b_rows);
  if (a.cols() != b.rows()) throw Error(Errc::dimension_mismatch, "inner dimensions differ");
  const auto pa = partition_a(a, static_cast<std::size_t>(s.table().K()));
  const auto pb = partition_b(b, static_cast<std::size_t>(s.table().L()));
  const auto& a0 = pa.blocks.front();
  const auto& b0 = pb.blocks.front();
  const Randomness rnd = draw_randomness(s, a0.rows(), a0.cols(), b0.rows(), b0.cols(), seed);
  const auto responses = run_workers(encode(s, pa.blocks, pb.blocks, rnd));
  return matrix_to(assemble_product(decode(s, responses), a.rows(), b.cols()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Polynomial codes for private distributed matrix multiplication";

  static py::exception<Error> error(m, "PdmmError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("is_prime", &is_prime, py::arg("n"));
  m.def("find_field", [](std::uint64_t q, std::uint64_t min_p) { return find_field(q, min_p).modulus(); },
        py::arg("q"), py::arg("min_p") = 0, "Smallest prime p >= max(min_p, q + 1) with q | p - 1.");
  m.def("element_of_order", [](std::uint64_t p, std::uint64_t q) { return element_of_order(PrimeField(p), q).value; },
        py::arg("p"), py::arg("q"));

  py::class_<DegreeVectors>(m, "DegreeVectors")
      .def(py::init<Degrees, Degrees, Degrees, Degrees, std::optional<std::int64_t>>(), py::arg("alpha_p"),
           py::arg("alpha_s"), py::arg("beta_p"), py::arg("beta_s"), py::arg("modulus") = py::none())
      .def_property_readonly("alpha_p", &DegreeVectors::alpha_p)
      .def_property_readonly("alpha_s", &DegreeVectors::alpha_s)
      .def_property_readonly("beta_p", &DegreeVectors::beta_p)
      .def_property_readonly("beta_s", &DegreeVectors::beta_s)
      .def_property_readonly("modulus", &DegreeVectors::modulus)
      .def_property_readonly("K", &DegreeVectors::K)
      .def_property_readonly("L", &DegreeVectors::L)
      .def_property_readonly("T", &DegreeVectors::T)
      .def("__eq__", [](const DegreeVectors& a, const DegreeVectors& b) { return a == b; });

  py::class_<Construction>(m, "Construction")
      .def_property_readonly("family", [](const Construction& c) { return std::string(family_token(c.family)); })
      .def_readonly("table", &Construction::table)
      .def_property_readonly("n_workers", [](const Construction& c) { return count_unique(c.table); })
      .def("describe", [](const Construction& c) { return to_python(describe_construction(c)); });

  m.def(
      "construct",
      [](const std::string& family, std::int64_t K, std::int64_t L, std::int64_t T, std::optional<std::int64_t> r,
         std::optional<std::int64_t> s, std::optional<std::int64_t> x) {
        return construct(family_from(family), {K, L, T, r, s, x});
      },
      py::arg("family"), py::arg("K"), py::arg("L"), py::arg("T"), py::arg("r") = py::none(),
      py::arg("s") = py::none(), py::arg("x") = py::none());
  m.def("custom", &custom_construction, py::arg("table"));
  m.def("count_unique", &count_unique, py::arg("table"));
  m.def("n_catx_formula", &n_catx_formula, py::arg("K"), py::arg("L"), py::arg("T"));
  m.def(
      "validate",
      [](const DegreeVectors& dv) {
        return to_python(describe_validation(dv.is_cyclic() ? validate_cat(dv) : validate_degree_table(dv)));
      },
      py::arg("table"));

  py::class_<PdmmScheme>(m, "Scheme")
      .def_readonly("construction", &PdmmScheme::construction)
      .def_property_readonly("p", [](const PdmmScheme& s) { return s.field.modulus(); })
      .def_property_readonly("omega",
                             [](const PdmmScheme& s) -> std::optional<std::uint64_t> {
                               if (!s.omega) return std::nullopt;
                               return s.omega->value;
                             })
      .def_readonly("root_order", &PdmmScheme::root_order)
      .def_property_readonly("rho",
                             [](const PdmmScheme& s) {
                               std::vector<std::uint64_t> out;
                               for (auto r : s.rho) out.push_back(r.value);
                               return out;
                             })
      .def_readonly("gamma", &PdmmScheme::gamma)
      .def_readonly("n_workers", &PdmmScheme::n_workers)
      .def_readonly("t_privacy", &PdmmScheme::t_privacy)
      .def_property_readonly("strategy", [](const PdmmScheme& s) { return std::string(strategy_token(s.strategy)); })
      .def("describe", [](const PdmmScheme& s) { return to_python(describe_scheme(s)); });

  m.def(
      "instantiate",
      [](const Construction& c, std::uint64_t min_p, std::uint64_t seed) {
        InstantiateOptions opt;
        opt.min_p = min_p;
        opt.seed = seed;
        return instantiate(c, opt);
      },
      py::arg("construction"), py::arg("min_p") = 0, py::arg("seed") = 0,
      "CAT tables use roots of unity, GASP_small and GASP_big roots of unity, others a seeded search.");
  m.def("multiply", &multiply, py::arg("scheme"), py::arg("a"), py::arg("b"), py::arg("seed") = 0,
        "Encodes, runs every worker and decodes A B over the scheme's field.");
  m.def(
      "verify_privacy_rank",
      [](const PdmmScheme& s) {
        const PrivacyRankReport rep = verify_privacy_rank(s);
        py::dict d;
        d["passed"] = rep.passed();
        d["exhaustive"] = rep.alpha.exhaustive && rep.beta.exhaustive;
        d["alpha_singular"] = rep.alpha.singular_rows;
        d["beta_singular"] = rep.beta.singular_rows;
        return d;
      },
      py::arg("scheme"));

  m.def(
      "best_scheme",
      [](std::int64_t K, std::int64_t L, std::int64_t T) {
        const SweepRecord rec = best_scheme(K, L, T);
        py::dict d;
        d["winner"] = std::string(scheme_family_token(rec.winner));
        d["N"] = rec.winner_n();
        d["margin"] = rec.margin;
        d["N_catx"] = rec.catx ? py::object(py::int_(rec.catx->n_workers)) : py::object(py::none());
        d["N_gasp_r"] = rec.gasp_r.n_workers;
        d["N_gasp_rs"] = rec.gasp_rs.n_workers;
        d["N_dog_rs"] = rec.dog_rs.n_workers;
        d["saving_dog_rs"] = rec.saving_dog_rs.value();
        return d;
      },
      py::arg("K"), py::arg("L"), py::arg("T"));
}
