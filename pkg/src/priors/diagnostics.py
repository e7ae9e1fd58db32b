"""Prior moments and variance ratios against Perks' prior."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.priors.dirichlet import AlphaTable, PriorError

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class CellMoments:
    mean: np.ndarray
    variance: np.ndarray


def prior_cell_moments(alpha: AlphaTable) -> CellMoments:
    """E[π(i)] = α(i)/α and V[π(i)] = α(i)(α − α(i)) / (α²(α + 1))."""
    a = alpha.alpha
    total = a.sum()
    mean = a / total
    variance = a * (total - a) / (total**2 * (total + 1.0))
    return CellMoments(mean=mean, variance=variance)


def variance_ratio(alpha_total: float) -> float:
    """2/(α + 1): a symmetric prior's cell variance relative to Perks' prior."""
    if not alpha_total > 0:
        raise PriorError(f"alpha total must be > 0, got {alpha_total}")
    return 2.0 / (alpha_total + 1.0)


def perks_variance(n_cells: int) -> float:
    return (n_cells - 1) / (2.0 * n_cells**2)


def cell_variance_ratios(alpha: AlphaTable) -> np.ndarray:
    """V[π(i)] / V_Perks per cell; constant for symmetric priors."""
    return prior_cell_moments(alpha).variance / perks_variance(alpha.n_cells)


def prior_variance_ratio(alpha: AlphaTable) -> float:
    if not is_symmetric(alpha):
        raise PriorError("variance_ratio assumes a symmetric prior; use cell_variance_ratios")
    return variance_ratio(alpha.total)


def is_symmetric(alpha: AlphaTable) -> bool:
    a = alpha.alpha
    return bool(np.max(np.abs(a - a[0])) <= SYMMETRY_TOL)


def prior_information(alpha: AlphaTable) -> float:
    """w·N* + |I|·α₀ for power priors; Σα(i) otherwise."""
    spec = alpha.spec
    if spec is not None and spec.kind == "power" and spec.imaginary is not None:
        return spec.effective_weight() * spec.imaginary.total + alpha.n_cells * spec.alpha0
    return alpha.total


def prior_information_fraction(alpha: AlphaTable, n_observed: Optional[float]) -> float:
    """Share of the posterior's total information contributed by the prior."""
    info = prior_information(alpha)
    return info / (info + (n_observed or 0.0))
