"""Analytic Beta summaries of the factorized posterior's cell probabilities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np
from scipy import stats

from src.inference.posterior import DirichletComponent, FactorizedDirichlet

DEFAULT_QUANTILES: Tuple[float, ...] = (0.025, 0.975)


def check_quantile_levels(levels: Sequence[float]) -> Tuple[float, ...]:
    levels = tuple(float(q) for q in levels)
    for q in levels:
        if not 0.0 < q < 1.0:
            raise ValueError(f"Quantile level {q} must lie in (0, 1)")
    return levels


@dataclass(frozen=True)
class BetaSummary:
    a: float
    b: float
    mean: float
    sd: float
    quantiles: Dict[float, float]


def beta_summary(
    a: float, b: float, quantile_levels: Sequence[float] = DEFAULT_QUANTILES
) -> BetaSummary:
    """Mean, sd and quantiles of Beta(a, b)."""
    if not (a > 0 and b > 0):
        raise ValueError(f"Beta parameters must be > 0, got ({a}, {b})")
    levels = check_quantile_levels(quantile_levels)
    total = a + b
    mean = a / total
    sd = math.sqrt(a * b / (total**2 * (total + 1.0)))
    quantiles = {q: float(stats.beta.ppf(q, a, b)) for q in levels}
    return BetaSummary(a=float(a), b=float(b), mean=mean, sd=sd, quantiles=quantiles)


@dataclass(frozen=True)
class ParameterSummary:
    """Beta marginal of one cell of one posterior component."""

    component: str
    name: str
    levels: Tuple[int, ...]
    given_levels: Tuple[int, ...]
    summary: BetaSummary


def _cells(dims: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    for k in range(int(np.prod(dims))):
        yield tuple(int(j) + 1 for j in np.unravel_index(k, tuple(dims), order="F"))


def _cell_name(comp: DirichletComponent, levels: Tuple[int, ...], given: Tuple[int, ...]) -> str:
    text = ",".join(str(i) for i in levels)
    if comp.kind == "conditional":
        text += "|" + ",".join(str(i) for i in given)
    return f"{comp.label}({text})"


def component_summaries(
    comp: DirichletComponent, quantile_levels: Sequence[float] = DEFAULT_QUANTILES
) -> List[ParameterSummary]:
    rows: List[ParameterSummary] = []
    parents = list(_cells(comp.given_dims)) if comp.kind == "conditional" else [()]
    for params, given in zip(comp.columns(), parents):
        total = float(params.sum())
        for k, levels in enumerate(_cells(comp.dims)):
            a = float(params[k])
            rows.append(
                ParameterSummary(
                    component=comp.label,
                    name=_cell_name(comp, levels, given),
                    levels=levels,
                    given_levels=given,
                    summary=beta_summary(a, total - a, quantile_levels),
                )
            )
    return rows


def posterior_summaries(
    posterior: FactorizedDirichlet, quantile_levels: Sequence[float] = DEFAULT_QUANTILES
) -> List[ParameterSummary]:
    """Every cell of every component, components in factorization order."""
    rows: List[ParameterSummary] = []
    for comp in posterior.components:
        rows.extend(component_summaries(comp, quantile_levels))
    return rows
