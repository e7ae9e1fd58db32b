"""Marginalization matrix M and contrast matrix C as Kronecker products.

Both are built with the LAST variable as the outermost Kronecker factor, so the
first variable's index varies fastest and the results line up with vec order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import TYPE_CHECKING, List, Sequence, Tuple

import numpy as np
from scipy import linalg

if TYPE_CHECKING:
    from src.marglog.scheme import MarginalScheme


@dataclass(frozen=True)
class LambdaLabel:
    """One λ entry: ``effect`` at ``levels`` (each >= 2), computed in ``marginal``."""

    marginal: Tuple[str, ...]
    effect: Tuple[str, ...]
    levels: Tuple[int, ...]

    @property
    def name(self) -> str:
        if not self.effect:
            return "λ_∅"
        return f"λ_{''.join(self.effect)}({','.join(str(i) for i in self.levels)})"

    @property
    def marginal_name(self) -> str:
        return f"M_{''.join(self.marginal)}"


def contrast_block(levels: int) -> np.ndarray:
    """J_l: first column ones, first row -1 beyond column 1, identity elsewhere."""
    j = np.eye(levels)
    j[:, 0] = 1.0
    j[0, 1:] = -1.0
    return j


def _kron_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, factors, np.ones((1, 1)))


def marginalization_block(variables: Sequence[str], dims: Sequence[int], marginal) -> np.ndarray:
    """M_i with M_i · vec(π) = vec of the marginal table over ``marginal``."""
    members = set(marginal)
    factors = [
        np.eye(d) if v in members else np.ones((1, d))
        for v, d in zip(reversed(tuple(variables)), reversed(tuple(dims)))
    ]
    return _kron_all(factors)


def build_M_matrix(scheme: "MarginalScheme", dims: Sequence[int]) -> np.ndarray:
    return np.vstack(
        [marginalization_block(scheme.variables, dims, m) for m in scheme.ordered_marginals]
    )


def _marginal_dims(scheme: "MarginalScheme", dims: Sequence[int], marginal) -> Tuple[int, ...]:
    lookup = dict(zip(scheme.variables, dims))
    return tuple(lookup[v] for v in marginal)


def saturated_design(dims: Sequence[int]) -> np.ndarray:
    """X = ⊗ over reversed variables of J_l (sum-to-zero saturated design)."""
    return _kron_all([contrast_block(d) for d in reversed(tuple(dims))])


def _block_labels(marginal: Tuple[str, ...], dims: Tuple[int, ...]) -> List[LambdaLabel]:
    labels = []
    for k in range(int(np.prod(dims))):
        idx = np.unravel_index(k, dims, order="F")
        effect = tuple(v for v, j in zip(marginal, idx) if j > 0)
        levels = tuple(int(j) + 1 for j in idx if j > 0)
        labels.append(LambdaLabel(marginal, effect, levels))
    return labels


def _kept_rows(scheme: "MarginalScheme", dims: Sequence[int]):
    for marginal in scheme.ordered_marginals:
        mdims = _marginal_dims(scheme, dims, marginal)
        allowed = set(scheme.effects[marginal])
        labels = _block_labels(marginal, mdims)
        rows = [k for k, lab in enumerate(labels) if lab.effect in allowed]
        yield marginal, mdims, rows, [labels[k] for k in rows]


def build_C_matrix(scheme: "MarginalScheme", dims: Sequence[int]) -> np.ndarray:
    """Direct sum of the inverted marginal designs, keeping allocated effects only."""
    blocks = []
    for _, mdims, rows, _ in _kept_rows(scheme, dims):
        design = saturated_design(mdims)
        assert abs(np.linalg.det(design)) > 1e-12, "contrast design must be invertible"
        blocks.append(linalg.inv(design)[rows, :])
    return linalg.block_diag(*blocks)


def contrast_row_labels(scheme: "MarginalScheme", dims: Sequence[int]) -> List[LambdaLabel]:
    labels: List[LambdaLabel] = []
    for _, _, _, kept in _kept_rows(scheme, dims):
        labels.extend(kept)
    return labels
