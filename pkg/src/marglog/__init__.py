"""Marginal log-linear parameterization: schemes, C/M matrices, and λ = C log(M π)."""

from src.marglog.matrices import (
    LambdaLabel,
    build_C_matrix,
    build_M_matrix,
    contrast_block,
    saturated_design,
)
from src.marglog.parameters import LambdaVector, LogDomainError, lambda_draws, lambda_from_pi
from src.marglog.scheme import (
    MarginalScheme,
    SchemeError,
    allocate_effects,
    hierarchical_ordering,
    is_decomposable,
    is_ordered_decomposable,
    marginal_scheme,
    power_set,
    zero_constraints,
)

__all__ = [
    "LambdaLabel",
    "LambdaVector",
    "LogDomainError",
    "MarginalScheme",
    "SchemeError",
    "allocate_effects",
    "build_C_matrix",
    "build_M_matrix",
    "contrast_block",
    "hierarchical_ordering",
    "is_decomposable",
    "is_ordered_decomposable",
    "lambda_draws",
    "lambda_from_pi",
    "marginal_scheme",
    "power_set",
    "saturated_design",
    "zero_constraints",
]
