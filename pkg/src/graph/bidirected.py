"""Bidirected graphs and their Markov properties.

A missing edge between two vertices encodes marginal (not conditional)
independence. Connectivity is always evaluated in the subgraph induced by the
vertex set under consideration.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx

Edge = FrozenSet[str]


@dataclass(frozen=True)
class BidirectedGraph:
    vertices: Tuple[str, ...]
    edges: FrozenSet[Edge]

    def __post_init__(self) -> None:
        vertices = tuple(self.vertices)
        if len(set(vertices)) != len(vertices):
            raise ValueError(f"Duplicate vertices: {vertices}")
        edges = frozenset(frozenset(e) for e in self.edges)
        for edge in edges:
            if len(edge) != 2:
                raise ValueError(f"Self-loops are not allowed: {sorted(edge)}")
            missing = edge - set(vertices)
            if missing:
                raise ValueError(f"Edge references unknown vertices: {sorted(missing)}")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_pairs(
        cls, vertices: Sequence[str], pairs: Iterable[Tuple[str, str]]
    ) -> BidirectedGraph:
        return cls(tuple(vertices), frozenset(frozenset(p) for p in pairs))

    def ordered(self, vertices: Iterable[str]) -> Tuple[str, ...]:
        """``vertices`` in the graph's vertex order."""
        members = set(vertices)
        return tuple(v for v in self.vertices if v in members)

    def degree(self, v: str) -> int:
        return len(spouses(self, v))

    def has_edge(self, v: str, w: str) -> bool:
        return frozenset((v, w)) in self.edges

    def to_networkx(self) -> nx.Graph:
        """Undirected view: vertices in table order, one edge per bidirected edge."""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(tuple(e) for e in self.edges)
        return g


@dataclass(frozen=True)
class IndependenceStatement:
    """``left`` is independent of ``right`` given ``given`` (empty = marginal)."""

    left: Tuple[str, ...]
    right: Tuple[str, ...]
    given: Tuple[str, ...] = ()

    def __str__(self) -> str:
        text = f"{''.join(self.left)} _||_ {''.join(self.right)}"
        if self.given:
            text += f" | {''.join(self.given)}"
        return text


def spouses(graph: BidirectedGraph, v: str) -> FrozenSet[str]:
    """Vertices joined to ``v`` by a bidirected edge."""
    if v not in graph.vertices:
        raise ValueError(f"Unknown vertex '{v}'")
    return frozenset(graph.to_networkx().neighbors(v))


def _members(graph: BidirectedGraph, subset: Iterable[str]) -> set:
    members = set(subset)
    unknown = members - set(graph.vertices)
    if unknown:
        raise ValueError(f"Unknown vertices: {sorted(unknown)}")
    return members


def maximal_connected_components(
    graph: BidirectedGraph, subset: Iterable[str]
) -> List[Tuple[str, ...]]:
    """Partition ``subset`` into maximal connected sets of the induced subgraph.

    Parts come out in order of their first vertex in the graph's vertex order.
    """
    induced = graph.to_networkx().subgraph(_members(graph, subset))
    parts = [graph.ordered(c) for c in nx.connected_components(induced)]
    return sorted(parts, key=lambda p: graph.vertices.index(p[0]))


def is_connected(graph: BidirectedGraph, subset: Iterable[str]) -> bool:
    members = _members(graph, subset)
    return bool(members) and nx.is_connected(graph.to_networkx().subgraph(members))


def _subsets(graph: BidirectedGraph, min_size: int = 1) -> List[Tuple[str, ...]]:
    """All vertex subsets by size, ties in vertex (table) order."""
    out: List[Tuple[str, ...]] = []
    for size in range(min_size, len(graph.vertices) + 1):
        out.extend(combinations(graph.vertices, size))
    return out


def disconnected_sets(graph: BidirectedGraph) -> List[Tuple[str, ...]]:
    """D(G): every vertex set of size >= 2 that is not connected.

    Ordered by cardinality, ties by the members' positions in the vertex order
    (so for vertices A, S, C the pair AS precedes AC).
    """
    return [s for s in _subsets(graph, min_size=2) if not is_connected(graph, s)]


def is_complete(graph: BidirectedGraph, subset: Iterable[str]) -> bool:
    return all(graph.has_edge(v, w) for v, w in combinations(tuple(subset), 2))


def maximal_cliques(graph: BidirectedGraph) -> List[Tuple[str, ...]]:
    """Inclusion-maximal complete vertex sets, larger first then vertex order."""
    maximal = [graph.ordered(c) for c in nx.find_cliques(graph.to_networkx())]
    return sorted(maximal, key=lambda s: (-len(s), [graph.vertices.index(v) for v in s]))


def markov_independences(graph: BidirectedGraph) -> List[IndependenceStatement]:
    """Connected set Markov property: C _||_ V \\ (C ∪ sp(C)) for connected C."""
    statements: List[IndependenceStatement] = []
    seen: set = set()
    for subset in _subsets(graph):
        if not is_connected(graph, subset):
            continue
        neighbours = set().union(*(spouses(graph, v) for v in subset))
        rest = graph.ordered(set(graph.vertices) - set(subset) - neighbours)
        if not rest:
            continue
        key = frozenset((frozenset(subset), frozenset(rest)))
        if key in seen:
            continue
        seen.add(key)
        statements.append(IndependenceStatement(left=tuple(subset), right=rest))
    return statements


def global_independences(graph: BidirectedGraph) -> List[Tuple[Tuple[str, ...], ...]]:
    """Global Markov property: for every disconnected D, its maximal connected
    components are mutually independent."""
    return [tuple(maximal_connected_components(graph, d)) for d in disconnected_sets(graph)]
