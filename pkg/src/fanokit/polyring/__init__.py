"""Exact homogeneous polynomial arithmetic and rank computations."""

from .fields import DEFAULT_PRIME, GF, QQ, PrimeField, PrimeFieldElement, RationalField, is_prime, parse_field
from .forms import (
    GradedForm,
    LinearSystem,
    generating_rank,
    graded_dim,
    graded_lex_key,
    is_c_generating,
    monomial_basis,
    monomial_index,
    multiplication_map,
)
from .linalg import Matrix, bareiss_rank, rank, rank_mod_p, solve_rational
from .text import format_form, parse_form

__all__ = [
    "DEFAULT_PRIME", "GF", "QQ", "PrimeField", "PrimeFieldElement", "RationalField",
    "is_prime", "parse_field", "GradedForm", "LinearSystem", "generating_rank",
    "graded_dim", "graded_lex_key", "is_c_generating", "monomial_basis",
    "monomial_index", "multiplication_map", "Matrix", "bareiss_rank", "rank",
    "rank_mod_p", "solve_rational", "format_form", "parse_form",
]
