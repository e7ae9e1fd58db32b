"""Rebuild the full joint table π from draws of the factorized components."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from src.inference.posterior import DirichletComponent, FactorizedDirichlet
from src.table.contingency import to_vec, unvec


def _component_array(comp: DirichletComponent, draw: np.ndarray) -> np.ndarray:
    """(T, *dims of variables, *dims of given) with vec axes unfolded."""
    if comp.kind == "marginal":
        if draw.ndim != 2 or draw.shape[1] != comp.n_cells:
            raise ValueError(f"Draw for {comp.label} has shape {draw.shape}")
        return unvec(draw, comp.dims)
    expected = (comp.n_cells, int(np.prod(comp.given_dims)))
    if draw.ndim != 3 or draw.shape[1:] != expected:
        raise ValueError(f"Draw for {comp.label} has shape {draw.shape}; expected (T, {expected})")
    arr = unvec(draw.transpose(0, 2, 1), comp.dims)
    arr = np.moveaxis(arr, 1, -1)
    return unvec(arr, comp.given_dims)


def _expand(arr: np.ndarray, positions: Sequence[int], dims: Sequence[int]) -> np.ndarray:
    """Put axes in table order and add singleton axes for absent variables."""
    order = np.argsort(positions)
    arr = arr.transpose([0] + [1 + int(i) for i in order])
    present = set(positions)
    shape = [arr.shape[0]] + [d if p in present else 1 for p, d in enumerate(dims)]
    return arr.reshape(shape)


def reconstruct_full_pi(factors: FactorizedDirichlet, draws: Sequence[np.ndarray]) -> np.ndarray:
    """π(i) as the product of the component probabilities, shape (T, |I|) in vec order.

    A single draw (component arrays without the leading T axis) gives a vector.
    """
    if len(draws) != len(factors.components):
        raise ValueError(
            f"Got {len(draws)} component draws for a {len(factors.components)}-component model"
        )
    draws = [np.asarray(d, dtype=float) for d in draws]
    single = draws[0].ndim == (1 if factors.components[0].kind == "marginal" else 2)
    if single:
        draws = [d[np.newaxis, ...] for d in draws]

    names = list(factors.variables)
    joint = np.ones((draws[0].shape[0],) + (1,) * len(factors.dims))
    for comp, draw in zip(factors.components, draws):
        positions = [names.index(v) for v in comp.variables + comp.given]
        joint = joint * _expand(_component_array(comp, draw), positions, factors.dims)
    pi = to_vec(joint, len(factors.dims))
    return pi[0] if single else pi
