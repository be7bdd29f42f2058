"""Exact-arithmetic bosonic quantum codes for amplitude damping."""

from .algebra import GammaPoly, Radical
from .codes import Code, Codeword, Row, catalog, catalog_entry, catalog_ids, \
    parse_code, serialize_code
from .construct import build_t1_family, build_t2_pair, existence_min_N, \
    solve_unbalanced_weights
from .criteria import check_moments, check_nondeformation, check_orthogonality, \
    theorem2_check, verify
from .metrics import codeword_count_estimate, fidelity_poly, optimal_t, rate
from .simulate import build_recovery, exact_success_probability, run_monte_carlo

__all__ = [
    "GammaPoly", "Radical",
    "Code", "Codeword", "Row", "catalog", "catalog_entry", "catalog_ids",
    "parse_code", "serialize_code",
    "build_t1_family", "build_t2_pair", "existence_min_N",
    "solve_unbalanced_weights",
    "check_moments", "check_nondeformation", "check_orthogonality",
    "theorem2_check", "verify",
    "codeword_count_estimate", "fidelity_poly", "optimal_t", "rate",
    "build_recovery", "exact_success_probability", "run_monte_carlo",
]

__version__ = "0.1.0"
