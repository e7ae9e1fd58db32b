"""Analytic marginal likelihoods and posterior model probabilities."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy.special import gammaln, logsumexp

from src.graph.bidirected import BidirectedGraph
from src.graph.models import model_label
from src.inference.posterior import FactorizedDirichlet, posterior_params, prior_params
from src.priors.dirichlet import AlphaTable, PriorError
from src.table.contingency import ContingencyTable, log_multinomial_coef

logger = logging.getLogger(__name__)


def log_dk(alpha: Sequence[float]) -> float:
    """log DK(α) = log Γ(Σα) − Σ log Γ(α_i), the log Dirichlet normalizing constant."""
    a = np.asarray(alpha, dtype=float)
    if a.size == 0 or not np.all(np.isfinite(a)) or np.any(a <= 0):
        raise PriorError("log_dk needs a non-empty vector of positive parameters")
    return float(gammaln(a.sum()) - gammaln(a).sum())


def factorized_log_dk(factors: FactorizedDirichlet) -> float:
    """Σ log DK over every independent Dirichlet in the factorization."""
    return sum(log_dk(col) for comp in factors.components for col in comp.columns())


def log_marginal_likelihood(
    graph: BidirectedGraph, alpha: AlphaTable, table: ContingencyTable
) -> float:
    """log f(n | G) = log K(n) + Σ_components [log DK(α) − log DK(α̃)]."""
    posterior = posterior_params(graph, alpha, table)
    prior = prior_params(graph, alpha)
    return log_multinomial_coef(table) + factorized_log_dk(prior) - factorized_log_dk(posterior)


@dataclass
class ModelPosterior:
    graph: BidirectedGraph
    posterior: FactorizedDirichlet
    log_ml: float
    post_prob: float = 0.0
    log_bayes_factor_vs_map: float = 0.0

    @property
    def label(self) -> str:
        return model_label(self.graph)


def posterior_model_probs(
    models: Sequence[BidirectedGraph],
    alpha: AlphaTable,
    table: ContingencyTable,
    model_prior: Optional[Sequence[float]] = None,
) -> List[ModelPosterior]:
    """Score every model and normalize f(G | n) ∝ f(G) f(n | G) in log space.

    ``model_prior`` holds unnormalized weights aligned with ``models``; uniform
    when omitted.
    """
    if not models:
        raise ValueError("At least one model is required")
    if model_prior is None:
        weights = np.ones(len(models))
    else:
        weights = np.asarray(model_prior, dtype=float)
        if weights.shape != (len(models),):
            raise ValueError(f"Expected {len(models)} model-prior weights, got {weights.size}")
        if np.any(~np.isfinite(weights)) or np.any(weights <= 0):
            raise ValueError("Model-prior weights must be finite and > 0")

    results = [
        ModelPosterior(
            graph=g,
            posterior=posterior_params(g, alpha, table),
            log_ml=log_marginal_likelihood(g, alpha, table),
        )
        for g in models
    ]
    log_ml = np.array([r.log_ml for r in results])
    scores = np.log(weights) + log_ml
    probs = np.exp(scores - logsumexp(scores))
    best = float(log_ml[int(np.argmax(probs))])
    for r, p in zip(results, probs):
        r.post_prob = float(p)
        r.log_bayes_factor_vs_map = r.log_ml - best
    logger.info("Scored %d models; MAP %s", len(results), map_model(results).label)
    return results


def map_model(results: Sequence[ModelPosterior]) -> ModelPosterior:
    """Highest posterior probability; ties go to the earlier model."""
    if not results:
        raise ValueError("No scored models")
    return max(results, key=lambda r: r.post_prob)
