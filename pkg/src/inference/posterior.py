"""Conjugate Dirichlet factorizations of π^G.

Each graph factorizes the joint distribution differently:

- saturated: one Dirichlet over the full table;
- independence and edge graphs (more generally, any graph whose maximal
  connected components are complete): one Dirichlet per component;
- three-variable gamma graphs: one Dirichlet per conditioning cell for the corner given the two
  endpoints, plus a marginal Dirichlet for each endpoint.

Component parameters are always derived from full-table values, so the same
``factorize`` call produces the prior (values = α) and the posterior
(values = α + n).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Literal, Sequence, Tuple

import numpy as np

from src.graph.bidirected import BidirectedGraph, is_complete, maximal_connected_components
from src.graph.models import UnsupportedDimensionError, classify
from src.priors.dirichlet import AlphaTable, PriorError, conditional_alpha_matrix
from src.table.contingency import ContingencyTable, InvalidCellError, collapse_vec

ComponentKind = Literal["marginal", "conditional"]


@dataclass(frozen=True, eq=False)
class DirichletComponent:
    """One factor of π^G.

    ``params`` is a vector over the cells of ``variables`` for marginal
    components. For conditional components it has shape (|I_variables|, |I_given|):
    column j holds the Dirichlet parameters of the child given the j-th parent
    cell in vec order.
    """

    kind: ComponentKind
    variables: Tuple[str, ...]
    dims: Tuple[int, ...]
    params: np.ndarray
    given: Tuple[str, ...] = ()
    given_dims: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        params = np.array(self.params, dtype=float)
        n_child = int(np.prod(self.dims))
        if self.kind == "marginal":
            if self.given:
                raise ValueError("Marginal components take no conditioning set")
            expected: Tuple[int, ...] = (n_child,)
        else:
            if not self.given:
                raise ValueError("Conditional components need a conditioning set")
            expected = (n_child, int(np.prod(self.given_dims)))
        if params.shape != expected:
            raise ValueError(f"params shape {params.shape} != {expected} for {self.label}")
        if not np.all(np.isfinite(params)) or np.any(params <= 0):
            raise PriorError(f"Dirichlet parameters of {self.label} must be > 0")
        params.flags.writeable = False
        object.__setattr__(self, "params", params)

    @property
    def label(self) -> str:
        name = "".join(self.variables)
        if self.kind == "conditional":
            return f"π_{name}|{''.join(self.given)}"
        return f"π_{name}"

    @property
    def n_cells(self) -> int:
        return int(np.prod(self.dims))

    def columns(self) -> List[np.ndarray]:
        """Independent Dirichlet parameter vectors, one per conditioning cell."""
        if self.kind == "marginal":
            return [self.params]
        return [self.params[:, j] for j in range(self.params.shape[1])]


@dataclass(frozen=True, eq=False)
class FactorizedDirichlet:
    graph: BidirectedGraph
    dims: Tuple[int, ...]
    components: Tuple[DirichletComponent, ...]

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.graph.vertices


def _marginal(
    names: Sequence[str], dims: Sequence[int], values: np.ndarray, subset: Sequence[str]
) -> DirichletComponent:
    keep = tuple(names.index(v) for v in subset)
    return DirichletComponent(
        kind="marginal",
        variables=tuple(subset),
        dims=tuple(dims[p] for p in keep),
        params=collapse_vec(values, dims, keep),
    )


def factorize(
    graph: BidirectedGraph, dims: Sequence[int], values: np.ndarray
) -> FactorizedDirichlet:
    """Split full-table Dirichlet parameters according to ``graph``'s factorization."""
    names = list(graph.vertices)
    dims = tuple(int(d) for d in dims)
    values = np.asarray(values, dtype=float)
    if values.shape != (int(np.prod(dims)),):
        expected = int(np.prod(dims))
        raise InvalidCellError(f"values have shape {values.shape}; expected ({expected},)")
    parts = maximal_connected_components(graph, names)
    if all(is_complete(graph, part) for part in parts):
        # saturated graphs have a single component covering V
        components = [_marginal(names, dims, values, part) for part in parts]
        return FactorizedDirichlet(graph=graph, dims=dims, components=tuple(components))

    if len(names) != 3:
        raise UnsupportedDimensionError(
            f"No conjugate factorization for {graph.vertices}: components must be complete"
        )
    corner = classify(graph).corner
    endpoints = tuple(v for v in names if v != corner)
    child_pos = (names.index(corner),)
    given_pos = tuple(names.index(v) for v in endpoints)
    conditional = DirichletComponent(
        kind="conditional",
        variables=(corner,),
        dims=(dims[child_pos[0]],),
        params=conditional_alpha_matrix(values, dims, child_pos, given_pos),
        given=endpoints,
        given_dims=tuple(dims[p] for p in given_pos),
    )
    components = [conditional] + [_marginal(names, dims, values, (v,)) for v in endpoints]
    return FactorizedDirichlet(graph=graph, dims=dims, components=tuple(components))


def _check_compatible(graph: BidirectedGraph, alpha: AlphaTable, table: ContingencyTable) -> None:
    if alpha.dims != table.dims:
        raise InvalidCellError(f"Prior dims {alpha.dims} differ from table dims {table.dims}")
    if tuple(graph.vertices) != table.names:
        raise InvalidCellError(
            f"Graph vertices {graph.vertices} differ from table variables {table.names}"
        )


def prior_params(graph: BidirectedGraph, alpha: AlphaTable) -> FactorizedDirichlet:
    return factorize(graph, alpha.dims, alpha.alpha)


def posterior_params(
    graph: BidirectedGraph, alpha: AlphaTable, table: ContingencyTable
) -> FactorizedDirichlet:
    """α̃ = α + n, split along ``graph``'s factorization."""
    _check_compatible(graph, alpha, table)
    return factorize(graph, table.dims, alpha.alpha + table.counts)
