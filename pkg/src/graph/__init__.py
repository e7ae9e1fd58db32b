"""Bidirected graphs, Markov properties and three-variable model enumeration."""

from src.graph.bidirected import (
    BidirectedGraph,
    IndependenceStatement,
    disconnected_sets,
    global_independences,
    is_complete,
    is_connected,
    markov_independences,
    maximal_cliques,
    maximal_connected_components,
    spouses,
)
from src.graph.models import (
    GraphClass,
    UnknownModelError,
    UnsupportedDimensionError,
    classify,
    enumerate_models,
    model_label,
    parse_model_label,
)

__all__ = [
    "BidirectedGraph",
    "GraphClass",
    "IndependenceStatement",
    "UnknownModelError",
    "UnsupportedDimensionError",
    "classify",
    "disconnected_sets",
    "enumerate_models",
    "global_independences",
    "is_complete",
    "is_connected",
    "markov_independences",
    "maximal_cliques",
    "maximal_connected_components",
    "model_label",
    "parse_model_label",
    "spouses",
]
