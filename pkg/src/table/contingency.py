"""Contingency tables in vec order.

Cells are flattened with the FIRST variable's level changing fastest, i.e. for a
2x2 table the order is (1,1), (2,1), (1,2), (2,2). Every array handled by the
engine (counts, Dirichlet parameters, probabilities) uses this convention, so the
helpers here are shared by the priors, inference and Monte Carlo packages.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence, Tuple

import numpy as np
from scipy.special import gammaln

INTEGRALITY_TOL = 1e-9

# 1-based level indices, one per variable, in table order.
CellIndex = Tuple[int, ...]


class InvalidCellError(ValueError):
    """Raised for out-of-range cells, unknown variables, or malformed tables."""


class IntegralityError(ValueError):
    """Raised when an integer-only operation receives fractional counts."""


@dataclass(frozen=True)
class Variable:
    name: str
    levels: Tuple[str, ...]
    label: Optional[str] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(str(level) for level in self.levels))
        if not self.name:
            raise InvalidCellError("Variable name must be non-empty")
        if len(self.levels) < 2:
            raise InvalidCellError(f"Variable '{self.name}' needs at least 2 levels")
        if len(set(self.levels)) != len(self.levels):
            raise InvalidCellError(f"Variable '{self.name}' has duplicate level labels")

    @property
    def cardinality(self) -> int:
        return len(self.levels)

    def level_index(self, label: str) -> int:
        """1-based index of a level label."""
        try:
            return self.levels.index(str(label)) + 1
        except ValueError as exc:
            raise InvalidCellError(
                f"Unknown level '{label}' for variable '{self.name}'; "
                f"expected one of {', '.join(self.levels)}"
            ) from exc


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """Cell counts of a cross-classification, stored in vec order.

    Counts are real-valued so the same type carries observed tables and the
    fractional imaginary tables of power priors.
    """

    variables: Tuple[Variable, ...]
    counts: np.ndarray
    name: Optional[str] = field(default=None)

    def __post_init__(self) -> None:
        variables = tuple(self.variables)
        names = [v.name for v in variables]
        if not variables:
            raise InvalidCellError("A table needs at least one variable")
        if len(set(names)) != len(names):
            raise InvalidCellError(f"Duplicate variable names: {names}")
        counts = np.array(self.counts, dtype=float).ravel()
        n_cells = int(np.prod([v.cardinality for v in variables]))
        if counts.size != n_cells:
            raise InvalidCellError(
                f"counts has {counts.size} entries; the table has {n_cells} cells"
            )
        if not np.all(np.isfinite(counts)) or np.any(counts < 0):
            raise InvalidCellError("counts must be finite and nonnegative")
        counts.flags.writeable = False
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "counts", counts)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(v.cardinality for v in self.variables)

    @property
    def n_cells(self) -> int:
        return int(self.counts.size)

    @property
    def total(self) -> float:
        return float(self.counts.sum())

    def variable(self, name: str) -> Variable:
        for var in self.variables:
            if var.name == name:
                return var
        raise InvalidCellError(f"Unknown variable '{name}'; table has {', '.join(self.names)}")

    def positions(self, names: Iterable[str]) -> Tuple[int, ...]:
        """Sorted table positions of ``names``."""
        return variable_positions(self.names, names)

    def subset(self, names: Iterable[str]) -> Tuple[str, ...]:
        """``names`` deduplicated and put in table order."""
        return tuple(self.names[p] for p in self.positions(names))

    def as_array(self) -> np.ndarray:
        """Counts as an array with one axis per variable."""
        return unvec(self.counts, self.dims)

    def count(self, cell: Sequence[int]) -> float:
        return float(self.counts[vec_index(cell, self.dims)])

    def cells(self) -> Iterator[CellIndex]:
        """All cells in vec order."""
        ranges = [range(1, d + 1) for d in reversed(self.dims)]
        for rev in product(*ranges):
            yield tuple(reversed(rev))

    def is_integral(self) -> bool:
        return bool(np.allclose(self.counts, np.round(self.counts), rtol=0, atol=INTEGRALITY_TOL))

    def with_counts(self, counts: Sequence[float], name: Optional[str] = None) -> ContingencyTable:
        return ContingencyTable(self.variables, np.asarray(counts, dtype=float), name or self.name)


def variable_positions(all_names: Sequence[str], names: Iterable[str]) -> Tuple[int, ...]:
    lookup = {name: i for i, name in enumerate(all_names)}
    out = set()
    for name in names:
        if name not in lookup:
            raise InvalidCellError(f"Unknown variable '{name}'; table has {', '.join(all_names)}")
        out.add(lookup[name])
    return tuple(sorted(out))


def vec_index(cell: Sequence[int], dims: Sequence[int]) -> int:
    """0-based vec offset of a 1-based cell, first variable fastest."""
    if len(cell) != len(dims):
        raise InvalidCellError(f"Cell {tuple(cell)} does not match {len(dims)} variables")
    for level, dim in zip(cell, dims):
        if not 1 <= int(level) <= int(dim):
            raise InvalidCellError(f"Cell {tuple(cell)} out of range for dims {tuple(dims)}")
    return int(np.ravel_multi_index([int(i) - 1 for i in cell], tuple(dims), order="F"))


def unvec(values: np.ndarray, dims: Sequence[int]) -> np.ndarray:
    """Reshape the trailing vec axis into one axis per variable.

    Leading axes (e.g. Monte Carlo draws) are kept, so ``values`` of shape
    ``(T, |I|)`` becomes ``(T, l_1, ..., l_k)``.
    """
    values = np.asarray(values)
    lead = values.shape[:-1]
    k = len(dims)
    n = len(lead)
    arr = values.reshape(lead + tuple(reversed(tuple(dims))))
    return arr.transpose(tuple(range(n)) + tuple(range(n + k - 1, n - 1, -1)))


def to_vec(array: np.ndarray, n_vars: int) -> np.ndarray:
    """Inverse of :func:`unvec` over the trailing ``n_vars`` axes."""
    array = np.asarray(array)
    n = array.ndim - n_vars
    arr = array.transpose(tuple(range(n)) + tuple(range(array.ndim - 1, n - 1, -1)))
    return arr.reshape(array.shape[:n] + (-1,))


def collapse_vec(values: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Sum a vec-ordered array over every variable not in ``keep`` (table positions)."""
    keep = tuple(sorted(keep))
    arr = unvec(values, dims)
    lead = arr.ndim - len(dims)
    drop = tuple(lead + p for p in range(len(dims)) if p not in keep)
    return to_vec(arr.sum(axis=drop), len(keep))


def marginal_counts(table: ContingencyTable, names: Iterable[str]) -> ContingencyTable:
    """Marginal table over ``names``, variables kept in the table's order."""
    keep = table.positions(names)
    if not keep:
        raise InvalidCellError("Marginal must contain at least one variable")
    counts = collapse_vec(table.counts, table.dims, keep)
    return ContingencyTable(tuple(table.variables[p] for p in keep), counts, table.name)


def log_multinomial_coef(table: ContingencyTable) -> float:
    """log K(n) = log Γ(N+1) − Σ log Γ(n(i)+1); observed integer counts only."""
    if not table.is_integral():
        raise IntegralityError("Multinomial coefficient needs integer counts")
    counts = np.round(table.counts)
    return float(gammaln(counts.sum() + 1.0) - gammaln(counts + 1.0).sum())
