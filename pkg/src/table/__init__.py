"""Contingency-table data model and cell ordering."""

from src.table.contingency import (
    CellIndex,
    ContingencyTable,
    IntegralityError,
    InvalidCellError,
    Variable,
    log_multinomial_coef,
    marginal_counts,
    vec_index,
)

__all__ = [
    "CellIndex",
    "ContingencyTable",
    "IntegralityError",
    "InvalidCellError",
    "Variable",
    "log_multinomial_coef",
    "marginal_counts",
    "vec_index",
]
