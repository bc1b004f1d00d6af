# Copyright 2026 The pdmm Authors
# SPDX-License-Identifier: Apache-2.0
"""Polynomial codes for private distributed matrix multiplication."""

from ._core import (
    Construction,
    DegreeVectors,
    PdmmError,
    Scheme,
    best_scheme,
    construct,
    count_unique,
    custom,
    element_of_order,
    find_field,
    instantiate,
    is_prime,
    multiply,
    n_catx_formula,
    validate,
    verify_privacy_rank,
)

__all__ = [
    "Construction",
    "DegreeVectors",
    "PdmmError",
    "Scheme",
    "best_scheme",
    "construct",
    "count_unique",
    "custom",
    "element_of_order",
    "find_field",
    "instantiate",
    "is_prime",
    "multiply",
    "n_catx_formula",
    "validate",
    "verify_privacy_rank",
]
