"""The eight marginal independence models of a three-way table."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import List, Literal, Optional, Sequence

from src.graph.bidirected import BidirectedGraph, maximal_cliques

GraphKind = Literal["independence", "edge", "gamma", "saturated"]

_KIND_BY_EDGES = {0: "independence", 1: "edge", 2: "gamma", 3: "saturated"}


class UnsupportedDimensionError(ValueError):
    """Raised when model classification is asked for |V| != 3."""


class UnknownModelError(ValueError):
    """Raised for a model label that matches none of the candidate graphs."""


@dataclass(frozen=True)
class GraphClass:
    kind: GraphKind
    corner: Optional[str] = None

    def __post_init__(self) -> None:
        if (self.kind == "gamma") != (self.corner is not None):
            raise ValueError("A corner node is present exactly for gamma graphs")


def _require_three(vertices: Sequence[str]) -> None:
    if len(vertices) != 3:
        raise UnsupportedDimensionError(
            f"Model classification supports three variables, got {len(vertices)}"
        )


def classify(graph: BidirectedGraph) -> GraphClass:
    _require_three(graph.vertices)
    kind = _KIND_BY_EDGES[len(graph.edges)]
    if kind != "gamma":
        return GraphClass(kind)  # type: ignore[arg-type]
    corner = next(v for v in graph.vertices if graph.degree(v) == 2)
    return GraphClass("gamma", corner=corner)


def enumerate_models(names: Sequence[str]) -> List[BidirectedGraph]:
    """All 8 graphs in canonical order: independence, 3 edge, 3 gamma, saturated.

    Edges are the vertex pairs in order (12, 13, 23); a gamma graph is listed by
    the edge it lacks, last pair first, so for (A, S, C) the order is
    A+S+C, AS+C, AC+S, SC+A, AS+AC, AS+SC, AC+SC, ASC.
    """
    vertices = tuple(names)
    _require_three(vertices)
    if len(set(vertices)) != 3:
        raise ValueError(f"Variable names must be distinct: {vertices}")
    pairs = list(combinations(vertices, 2))
    edge_sets = [()] + [(p,) for p in pairs] + list(combinations(pairs, 2)) + [tuple(pairs)]
    return [BidirectedGraph.from_pairs(vertices, edges) for edges in edge_sets]


def model_label(graph: BidirectedGraph) -> str:
    """Maximal cliques joined by '+', e.g. 'SC+A', 'AS+SC', 'ASC'."""
    return "+".join("".join(clique) for clique in maximal_cliques(graph))


def _split_component(token: str, names: Sequence[str]) -> Optional[frozenset]:
    """Greedy longest-name-first split of a component token into variable names."""
    lookup = sorted(names, key=len, reverse=True)
    members = []
    rest = token
    while rest:
        match = next((n for n in lookup if rest.upper().startswith(n.upper())), None)
        if match is None:
            return None
        members.append(match)
        rest = rest[len(match) :]
    return frozenset(members)


def parse_model_label(label: str, models: Sequence[BidirectedGraph]) -> BidirectedGraph:
    """Find the model whose label matches ``label``.

    Matching ignores case and the order of '+'-separated components, so 'a+sc'
    selects the same graph as 'SC+A'.
    """
    if not models:
        raise UnknownModelError("No candidate models")
    names = models[0].vertices
    tokens = [t.strip() for t in label.replace(" ", "").split("+") if t.strip()]
    parsed = [_split_component(t, names) for t in tokens]
    if tokens and all(p is not None for p in parsed):
        wanted = frozenset(parsed)
        for graph in models:
            if frozenset(frozenset(c) for c in maximal_cliques(graph)) == wanted:
                return graph
    valid = ", ".join(model_label(g) for g in models)
    raise UnknownModelError(f"Unknown model '{label}'; valid labels: {valid}")
