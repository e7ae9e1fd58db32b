"""Full-table Dirichlet priors and their induced marginal/conditional parameters.

Every model-specific prior is derived from one Dirichlet on the full table, so
priors stay compatible across graphs: a marginal's parameters are sums of the
full-table α over the collapsed cells, and a conditional's parameters are a
slice of the collapsed α with the conditioning levels held fixed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Literal, Optional, Sequence, Tuple

import numpy as np

from src.table.contingency import (
    ContingencyTable,
    InvalidCellError,
    Variable,
    collapse_vec,
    to_vec,
    unvec,
    variable_positions,
)

logger = logging.getLogger(__name__)

PriorKind = Literal["jeffreys", "unit_expected_cell", "perks_uip", "empirical_bayes", "power"]
PRIOR_KINDS: Tuple[str, ...] = (
    "jeffreys",
    "unit_expected_cell",
    "perks_uip",
    "empirical_bayes",
    "power",
)

PRIOR_DESCRIPTIONS = {
    "jeffreys": "Jeffreys' α(i) = 1/2",
    "unit_expected_cell": "Unit Expected Cell α(i) = 1",
    "perks_uip": "UIP-Perks' α(i) = 1/|I|",
    "empirical_bayes": "Empirical Bayes α(i) = p(i)",
    "power": "Power prior α(i) = w·n*(i) + α0",
}


class PriorError(ValueError):
    """Raised for invalid prior options or non-positive Dirichlet parameters."""


@dataclass
class PriorSpec:
    kind: PriorKind = "perks_uip"
    imaginary: Optional[ContingencyTable] = None
    # None means w = 1/N*, the unit information weight.
    weight: Optional[float] = None
    alpha0: float = 0.0

    def validate(self) -> None:
        if self.kind not in PRIOR_KINDS:
            expected = ", ".join(PRIOR_KINDS)
            raise PriorError(f"Unknown prior '{self.kind}'; expected one of {expected}")
        if self.kind != "power":
            if self.imaginary is not None or self.weight is not None or self.alpha0:
                raise PriorError(f"Power-prior options given for prior '{self.kind}'")
            return
        if self.imaginary is None:
            raise PriorError("Power prior needs an imaginary table")
        if self.weight is not None and not self.weight > 0:
            raise PriorError(f"Power-prior weight must be > 0, got {self.weight}")
        if self.alpha0 < 0:
            raise PriorError(f"Pre-prior alpha0 must be >= 0, got {self.alpha0}")
        if self.imaginary.total <= 0 and self.weight is None:
            raise PriorError("Imaginary table is empty; pass an explicit weight")

    def __post_init__(self) -> None:
        self.validate()

    def effective_weight(self) -> Optional[float]:
        if self.kind != "power" or self.imaginary is None:
            return None
        return self.weight if self.weight is not None else 1.0 / self.imaginary.total

    def describe(self) -> str:
        text = PRIOR_DESCRIPTIONS[self.kind]
        if self.kind == "power":
            text += f" (w = {self.effective_weight():.6g}, α0 = {self.alpha0:g})"
        return text


@dataclass(frozen=True, eq=False)
class AlphaTable:
    """Dirichlet parameters of the full table in vec order."""

    variables: Tuple[Variable, ...]
    alpha: np.ndarray
    spec: Optional[PriorSpec] = None

    def __post_init__(self) -> None:
        alpha = np.array(self.alpha, dtype=float).ravel()
        n_cells = int(np.prod([v.cardinality for v in self.variables]))
        if alpha.size != n_cells:
            raise PriorError(f"alpha has {alpha.size} entries; the table has {n_cells} cells")
        if not np.all(np.isfinite(alpha)) or np.any(alpha <= 0):
            raise PriorError("Dirichlet parameters must be finite and > 0")
        alpha.flags.writeable = False
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "alpha", alpha)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(v.cardinality for v in self.variables)

    @property
    def total(self) -> float:
        return float(self.alpha.sum())

    @property
    def n_cells(self) -> int:
        return int(self.alpha.size)

    def positions(self, names: Iterable[str]) -> Tuple[int, ...]:
        return variable_positions(self.names, names)


def make_prior(spec: PriorSpec, table: ContingencyTable) -> AlphaTable:
    """Full-table Dirichlet parameters for ``spec`` over ``table``'s cells."""
    n = table.n_cells
    if spec.kind == "jeffreys":
        alpha = np.full(n, 0.5)
    elif spec.kind == "unit_expected_cell":
        alpha = np.ones(n)
    elif spec.kind == "perks_uip":
        alpha = np.full(n, 1.0 / n)
    elif spec.kind == "empirical_bayes":
        if table.total <= 0 or np.any(table.counts <= 0):
            raise PriorError(
                "Empirical Bayes prior needs every observed cell > 0 "
                "(Dirichlet α must be positive)"
            )
        alpha = table.counts / table.total
        if alpha.min() < 1e-6:
            logger.warning("Empirical Bayes prior has a cell proportion below 1e-6")
    else:
        alpha = _power_alpha(spec, table)
    return AlphaTable(table.variables, alpha, spec)


def _power_alpha(spec: PriorSpec, table: ContingencyTable) -> np.ndarray:
    imaginary = spec.imaginary
    assert imaginary is not None
    if imaginary.dims != table.dims:
        raise PriorError(
            f"Imaginary table dims {imaginary.dims} differ from data dims {table.dims}"
        )
    if imaginary.names != table.names:
        logger.warning(
            "Imaginary table variables %s differ from data variables %s; cells matched by position",
            imaginary.names,
            table.names,
        )
    if imaginary.total != table.total:
        logger.info("Imaginary total N* = %g, observed N = %g", imaginary.total, table.total)
    weight = spec.effective_weight()
    alpha = weight * imaginary.counts + spec.alpha0
    if np.any(alpha <= 0):
        raise PriorError("Power prior gives a non-positive α(i); raise alpha0 or fill empty cells")
    return alpha


def collapse_alpha(alpha: AlphaTable, names: Iterable[str]) -> AlphaTable:
    """α_M(i_M) = Σ_{j: j_M = i_M} α(j)."""
    try:
        keep = alpha.positions(names)
    except InvalidCellError as exc:
        raise PriorError(str(exc)) from exc
    if not keep:
        raise PriorError("Marginal must contain at least one variable")
    values = collapse_vec(alpha.alpha, alpha.dims, keep)
    return AlphaTable(tuple(alpha.variables[p] for p in keep), values, alpha.spec)


def conditional_alpha(
    alpha: AlphaTable,
    child: Sequence[str],
    given: Sequence[str],
    given_levels: Sequence[int],
) -> np.ndarray:
    """Dirichlet parameters of π_{child|given}(· | given_levels).

    ``given_levels`` are 1-based and follow the table order of ``given``.
    """
    child_pos = alpha.positions(child)
    given_pos = alpha.positions(given)
    if set(child_pos) & set(given_pos):
        raise PriorError("Conditioning sets must be disjoint")
    if len(given_levels) != len(given_pos):
        raise PriorError(f"Expected {len(given_pos)} conditioning levels, got {len(given_levels)}")
    union = tuple(sorted(child_pos + given_pos))
    dims = alpha.dims
    arr = unvec(collapse_vec(alpha.alpha, dims, union), [dims[p] for p in union])
    index = []
    levels = dict(zip(given_pos, given_levels))
    for p in union:
        if p in levels:
            level = int(levels[p])
            if not 1 <= level <= dims[p]:
                raise PriorError(f"Level {level} out of range for variable '{alpha.names[p]}'")
            index.append(level - 1)
        else:
            index.append(slice(None))
    return to_vec(arr[tuple(index)], len(child_pos))


def conditional_alpha_matrix(
    values: np.ndarray, dims: Sequence[int], child: Sequence[int], given: Sequence[int]
) -> np.ndarray:
    """All conditional slices at once: shape (|I_child|, |I_given|), columns in vec order.

    ``child`` and ``given`` are table positions.
    """
    child = tuple(sorted(child))
    given = tuple(sorted(given))
    union = tuple(sorted(child + given))
    arr = unvec(collapse_vec(values, dims, union), [dims[p] for p in union])
    arr = arr.transpose([union.index(p) for p in child + given])
    n_child = int(np.prod([dims[p] for p in child]))
    return arr.reshape((n_child, -1), order="F")
