"""Forward map from joint probabilities to marginal log-linear parameters."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from src.marglog.matrices import LambdaLabel
from src.marglog.scheme import MarginalScheme

SIMPLEX_TOL = 1e-10


class LogDomainError(ArithmeticError):
    """Raised when a marginal probability is zero and its log is undefined."""


@dataclass(frozen=True, eq=False)
class LambdaVector:
    labels: Tuple[LambdaLabel, ...]
    values: np.ndarray
    constrained: np.ndarray

    def value(self, effect: Sequence[str], levels: Sequence[int] = ()) -> float:
        key = (tuple(effect), tuple(levels))
        for label, value in zip(self.labels, self.values):
            if (label.effect, label.levels) == key:
                return float(value)
        raise KeyError(f"No λ entry for effect {key[0]} at levels {key[1]}")

    def as_dict(self) -> Dict[str, float]:
        return {label.name: float(v) for label, v in zip(self.labels, self.values)}


def lambda_draws(scheme: MarginalScheme, pi: np.ndarray) -> np.ndarray:
    """λ = C log(M vec(π)) for every row of ``pi`` (shape ``(T, |I|)``)."""
    marginals = np.atleast_2d(pi) @ scheme.M_matrix.T
    if np.any(marginals <= 0):
        bad = int(np.argwhere(marginals <= 0)[0][0])
        raise LogDomainError(
            f"Zero marginal probability in draw {bad}; log-linear parameters are undefined"
        )
    return np.log(marginals) @ scheme.C_matrix.T


def lambda_from_pi(scheme: MarginalScheme, pi: Sequence[float]) -> LambdaVector:
    """Marginal log-linear parameters of a single joint distribution in vec order."""
    pi = np.asarray(pi, dtype=float)
    if pi.shape != (int(np.prod(scheme.dims)),):
        raise ValueError(f"pi has shape {pi.shape}; expected ({int(np.prod(scheme.dims))},)")
    if np.any(pi < 0) or abs(pi.sum() - 1.0) > SIMPLEX_TOL:
        raise ValueError(f"pi must lie on the simplex (sum = {pi.sum():.12f})")
    values = lambda_draws(scheme, pi)[0]
    return LambdaVector(tuple(scheme.row_labels), values, scheme.constrained_mask.copy())
