"""Hierarchical, complete allocation of log-linear effects to marginal tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Dict, List, Sequence, Tuple

import numpy as np

from src.graph.bidirected import BidirectedGraph, disconnected_sets
from src.marglog.matrices import build_C_matrix, build_M_matrix, contrast_row_labels

Marginal = Tuple[str, ...]
Effect = Tuple[str, ...]


class SchemeError(ValueError):
    """Raised for duplicate, comparable, or non-decomposable marginals."""


def _order_key(subset: Sequence[str], variables: Sequence[str]) -> Tuple[int, List[int]]:
    return len(subset), [variables.index(v) for v in subset]


def _normalize(subset: Sequence[str], variables: Sequence[str]) -> Marginal:
    unknown = set(subset) - set(variables)
    if unknown:
        raise SchemeError(f"Unknown variables in marginal: {sorted(unknown)}")
    return tuple(v for v in variables if v in set(subset))


def power_set(marginal: Sequence[str]) -> List[Effect]:
    """S(M): every subset of ``marginal`` including the empty effect, by size."""
    out: List[Effect] = []
    for size in range(len(marginal) + 1):
        out.extend(combinations(tuple(marginal), size))
    return out


def hierarchical_ordering(
    marginals: Sequence[Sequence[str]], variables: Sequence[str]
) -> List[Marginal]:
    """Sort by cardinality then table position and append the full set V."""
    variables = tuple(variables)
    normalized = [_normalize(m, variables) for m in marginals]
    if len(set(normalized)) != len(normalized):
        raise SchemeError(f"Duplicate marginals: {normalized}")
    ordered = sorted(normalized, key=lambda m: _order_key(m, variables))
    if not ordered or ordered[-1] != variables:
        ordered.append(variables)
    for i, later in enumerate(ordered):
        for earlier in ordered[:i]:
            if set(later) <= set(earlier):
                raise SchemeError(f"Marginal {later} is contained in preceding {earlier}")
    return ordered


def is_decomposable(marginals: Sequence[Sequence[str]]) -> bool:
    """Running-intersection check over all orderings of incomparable marginals.

    Any incomparable class spanning at most three variables is accepted: the
    two-way margins of a three-way table always give variation independent
    parameters.
    """
    sets = [frozenset(m) for m in marginals]
    for a, b in combinations(sets, 2):
        if a <= b or b <= a:
            raise SchemeError(f"Marginals {sorted(a)} and {sorted(b)} are comparable")
    if len(sets) <= 2 or len(frozenset().union(*sets)) <= 3:
        return True
    for order in permutations(sets):
        if all(
            any(
                frozenset().union(*order[:k]) & order[k] == order[j] & order[k]
                for j in range(k)
            )
            for k in range(2, len(order))
        ):
            return True
    return False


def _maximal(sets: Sequence[frozenset]) -> List[frozenset]:
    return [s for s in sets if not any(s < t for t in sets)]


def is_ordered_decomposable(ordered: Sequence[Sequence[str]]) -> bool:
    sets = [frozenset(m) for m in ordered]
    if len(sets) <= 2:
        return True
    return all(is_decomposable(_maximal(sets[:k])) for k in range(3, len(sets) + 1))


def allocate_effects(ordered: Sequence[Marginal]) -> Dict[Marginal, List[Effect]]:
    """E_{M_1} = S(M_1); E_{M_i} = S(M_i) minus every effect of earlier marginals."""
    allocated: Dict[Marginal, List[Effect]] = {}
    seen: set = set()
    for marginal in ordered:
        effects = [e for e in power_set(marginal) if e not in seen]
        seen.update(effects)
        allocated[tuple(marginal)] = effects
    return allocated


def zero_constraints(graph: BidirectedGraph) -> List[Tuple[Marginal, Effect]]:
    """Highest-order effect of every disconnected marginal is fixed at zero."""
    return [(d, d) for d in disconnected_sets(graph)]


@dataclass(frozen=True, eq=False)
class MarginalScheme:
    """Ordered marginals D(G) ∪ {V}, their effects, and the C/M matrix pair."""

    variables: Tuple[str, ...]
    dims: Tuple[int, ...]
    ordered_marginals: List[Marginal]
    effects: Dict[Marginal, List[Effect]]
    zero_constrained: List[Tuple[Marginal, Effect]] = field(default_factory=list)

    @cached_property
    def M_matrix(self) -> np.ndarray:
        return build_M_matrix(self, self.dims)

    @cached_property
    def C_matrix(self) -> np.ndarray:
        return build_C_matrix(self, self.dims)

    @cached_property
    def row_labels(self):
        return contrast_row_labels(self, self.dims)

    @cached_property
    def constrained_mask(self) -> np.ndarray:
        zero = set(self.zero_constrained)
        return np.array([(lab.marginal, lab.effect) in zero for lab in self.row_labels])

    @property
    def n_parameters(self) -> int:
        return len(self.row_labels)


def marginal_scheme(graph: BidirectedGraph, dims: Sequence[int]) -> MarginalScheme:
    """Marginal log-linear parameterization of ``graph`` over a table of ``dims``."""
    variables = tuple(graph.vertices)
    if len(dims) != len(variables):
        raise SchemeError(f"dims {tuple(dims)} do not match vertices {variables}")
    ordered = hierarchical_ordering(disconnected_sets(graph), variables)
    if not is_ordered_decomposable(ordered):
        raise SchemeError(f"Marginals {ordered} are not ordered decomposable")
    return MarginalScheme(
        variables=variables,
        dims=tuple(int(d) for d in dims),
        ordered_marginals=ordered,
        effects=allocate_effects(ordered),
        zero_constrained=zero_constraints(graph),
    )
