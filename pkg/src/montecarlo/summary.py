"""Monte Carlo summaries of λ and of the reconstructed joint table."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.graph.bidirected import BidirectedGraph
from src.inference.posterior import FactorizedDirichlet
from src.marglog.parameters import lambda_draws
from src.marglog.scheme import MarginalScheme, marginal_scheme
from src.montecarlo.reconstruct import reconstruct_full_pi
from src.montecarlo.sampler import SamplerConfig, run_chunked, sample_components

logger = logging.getLogger(__name__)

ZERO_TOL = 1e-9
QUANTILE_RULE = "linear"


class ConstraintViolationError(ArithmeticError):
    """Raised when a zero-constrained λ entry drifts away from zero in some draw."""


@dataclass(frozen=True)
class QuantitySummary:
    name: str
    mean: float
    sd: float
    quantiles: Dict[float, float]
    marginal: Optional[str] = None
    exact_zero: bool = False


@dataclass
class SampleSummary:
    draws: int
    seed: int
    quantile_levels: Tuple[float, ...]
    quantile_rule: str = QUANTILE_RULE
    quantities: List[QuantitySummary] = field(default_factory=list)

    def get(self, name: str) -> QuantitySummary:
        for q in self.quantities:
            if q.name == name:
                return q
        raise KeyError(name)


@dataclass
class LambdaSampleResult:
    lambdas: SampleSummary
    joint: Optional[SampleSummary] = None


def summarize_columns(
    samples: np.ndarray, levels: Sequence[float]
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Column means, sds (ddof=1 when T > 1) and quantiles of shape (len(levels), K)."""
    ddof = 1 if samples.shape[0] > 1 else 0
    mean = samples.mean(axis=0)
    sd = samples.std(axis=0, ddof=ddof)
    quantiles = np.quantile(samples, list(levels), axis=0, method=QUANTILE_RULE)
    return mean, sd, np.atleast_2d(quantiles)


def _summaries(
    samples: np.ndarray,
    names: Sequence[str],
    levels: Sequence[float],
    marginals: Optional[Sequence[str]] = None,
    zero_mask: Optional[np.ndarray] = None,
) -> List[QuantitySummary]:
    mean, sd, quantiles = summarize_columns(samples, levels)
    out: List[QuantitySummary] = []
    for k, name in enumerate(names):
        zero = bool(zero_mask[k]) if zero_mask is not None else False
        out.append(
            QuantitySummary(
                name=name,
                mean=0.0 if zero else float(mean[k]),
                sd=0.0 if zero else float(sd[k]),
                quantiles={
                    q: 0.0 if zero else float(quantiles[j, k]) for j, q in enumerate(levels)
                },
                marginal=marginals[k] if marginals is not None else None,
                exact_zero=zero,
            )
        )
    return out


def _joint_names(dims: Sequence[int]) -> List[str]:
    names = []
    for k in range(int(np.prod(dims))):
        idx = np.unravel_index(k, tuple(dims), order="F")
        names.append(f"π({','.join(str(int(j) + 1) for j in idx)})")
    return names


def sample_lambda(
    graph: BidirectedGraph,
    posterior: FactorizedDirichlet,
    scheme: Optional[MarginalScheme],
    config: SamplerConfig,
    include_joint: bool = True,
) -> LambdaSampleResult:
    """Posterior summaries of λ^G = C log(M vec(π)) over ``config.draws`` draws.

    Zero-constrained entries are checked on every draw and reported as exact
    zeros.
    """
    scheme = scheme or marginal_scheme(graph, posterior.dims)
    if tuple(scheme.variables) != tuple(graph.vertices):
        raise ValueError("Scheme and graph disagree on the variable order")

    def work(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, np.ndarray]:
        pi = reconstruct_full_pi(posterior, sample_components(posterior, rng, size))
        return pi, lambda_draws(scheme, pi)

    chunks = run_chunked(config, work)
    pi = np.concatenate([c[0] for c in chunks], axis=0)
    lam = np.concatenate([c[1] for c in chunks], axis=0)

    mask = scheme.constrained_mask
    if mask.any():
        worst = float(np.max(np.abs(lam[:, mask])))
        if worst >= ZERO_TOL:
            raise ConstraintViolationError(
                f"Zero-constrained λ reached |λ| = {worst:.3g} under {graph.vertices}"
            )
    logger.info("Sampled %d draws of %d λ entries", config.draws, lam.shape[1])

    levels = config.quantile_levels
    labels = scheme.row_labels
    lambdas = SampleSummary(config.draws, config.seed, tuple(levels))
    lambdas.quantities = _summaries(
        lam,
        [lab.name for lab in labels],
        levels,
        marginals=[lab.marginal_name for lab in labels],
        zero_mask=mask,
    )
    result = LambdaSampleResult(lambdas=lambdas)
    if include_joint:
        joint = SampleSummary(config.draws, config.seed, tuple(levels))
        joint.quantities = _summaries(pi, _joint_names(posterior.dims), levels)
        result.joint = joint
    return result
