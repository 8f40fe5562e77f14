"""Exact subspace null designs over finite fields."""

from ._core import (
    BudgetExceeded,
    DomainError,
    FieldError,
    IncidenceMatrix,
    NullDesign,
    canonicalize,
    check_constant_sum,
    construct_lb_design,
    construct_uniform_design,
    enumerate_subspaces,
    gaussian_binomial,
    strength_of,
    verify_strength,
    wilson_matrix,
)

__all__ = [
    "BudgetExceeded",
    "DomainError",
    "FieldError",
    "IncidenceMatrix",
    "NullDesign",
    "canonicalize",
    "check_constant_sum",
    "construct_lb_design",
    "construct_uniform_design",
    "enumerate_subspaces",
    "gaussian_binomial",
    "strength_of",
    "verify_strength",
    "wilson_matrix",
]
