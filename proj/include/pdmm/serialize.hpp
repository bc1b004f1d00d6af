// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "pdmm/degrees.hpp"
#include "pdmm/scheme.hpp"

namespace pdmm {

using ojson = nlohmann::ordered_json;

/// Table-only description: the scheme schema without p, omega and rho.
ojson describe_construction(const Construction& c);

/// {family, K, L, T, r?, s?, x?, q?, p, omega?, rho, alpha_p, alpha_s, beta_p, beta_s, N}.
ojson describe_scheme(const PdmmScheme& s);

ojson describe_validation(const ValidationReport& rep);

/// A parsed table file. Field data is present only when the file carried it.
struct SchemeDescription {
  Construction construction;
  std::optional<std::uint64_t> p;
  std::optional<std::uint64_t> omega;
  std::vector<std::uint64_t> rho;
};

/// Reads a description back. When the vectors are present they are
/// authoritative; a family label that does not reproduce them becomes custom.
/// Throws Errc::parse_error on malformed input.
SchemeDescription parse_description(const nlohmann::json& doc);
SchemeDescription parse_description_text(std::string_view text);

/// Rebuilds the scheme described by a file that carries p and rho.
PdmmScheme scheme_from_description(const SchemeDescription& d);

}  // namespace pdmm
