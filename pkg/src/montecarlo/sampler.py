"""Seeded, chunked sampling from factorized Dirichlet posteriors.

Draws are generated in fixed-size chunks. Chunk k always uses the k-th child of
``SeedSequence(seed)`` feeding a PCG64 generator, and chunk results are merged
in chunk order, so the output depends only on (seed, draws) and never on the
number of workers.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Sequence, Tuple, TypeVar

import numpy as np

from src.inference.posterior import DirichletComponent, FactorizedDirichlet
from src.inference.summaries import DEFAULT_QUANTILES, check_quantile_levels

logger = logging.getLogger(__name__)

DEFAULT_DRAWS = 1000
DEFAULT_SEED = 42
CHUNK_SIZE = 10_000
RNG_ALGORITHM = "numpy SeedSequence.spawn + PCG64 per chunk"

T = TypeVar("T")


@dataclass
class SamplerConfig:
    draws: int = DEFAULT_DRAWS
    seed: int = DEFAULT_SEED
    quantile_levels: Tuple[float, ...] = field(default_factory=lambda: DEFAULT_QUANTILES)
    workers: int = 1

    def validate(self) -> None:
        if int(self.draws) < 1:
            raise ValueError(f"draws must be >= 1, got {self.draws}")
        if int(self.seed) < 0 or int(self.seed) >= 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if int(self.workers) < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        self.quantile_levels = check_quantile_levels(self.quantile_levels)

    def __post_init__(self) -> None:
        self.validate()


def chunk_sizes(draws: int, chunk_size: int = CHUNK_SIZE) -> List[int]:
    full, rest = divmod(int(draws), chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def chunk_generators(seed: int, n_chunks: int) -> List[np.random.Generator]:
    children = np.random.SeedSequence(int(seed)).spawn(n_chunks)
    return [np.random.Generator(np.random.PCG64(child)) for child in children]


def run_chunked(config: SamplerConfig, work: Callable[[np.random.Generator, int], T]) -> List[T]:
    """Apply ``work(rng, size)`` to every chunk; results come back in chunk order."""
    sizes = chunk_sizes(config.draws)
    rngs = chunk_generators(config.seed, len(sizes))
    logger.debug(
        "Sampling %d draws in %d chunks (%d workers)", config.draws, len(sizes), config.workers
    )
    if config.workers == 1 or len(sizes) == 1:
        return [work(rng, size) for rng, size in zip(rngs, sizes)]
    with ThreadPoolExecutor(max_workers=min(config.workers, len(sizes))) as executor:
        return list(executor.map(work, rngs, sizes))


def sample_dirichlet(
    params: Sequence[float], rng: np.random.Generator, size: int = 1
) -> np.ndarray:
    """``size`` Dirichlet draws via normalized unit-scale gamma variates.

    ``params`` may carry leading axes; the Dirichlet runs over the last one and
    the output has shape ``(size,) + params.shape``.
    """
    params = np.asarray(params, dtype=float)
    if np.any(params <= 0):
        raise ValueError("Dirichlet parameters must be > 0")
    gammas = rng.standard_gamma(params, size=(int(size),) + params.shape)
    return gammas / gammas.sum(axis=-1, keepdims=True)


def sample_component(
    comp: DirichletComponent, rng: np.random.Generator, size: int
) -> np.ndarray:
    """(size, K) for marginal components, (size, Kc, Kp) for conditional ones."""
    if comp.kind == "marginal":
        return sample_dirichlet(comp.params, rng, size)
    # one independent Dirichlet per parent cell
    return sample_dirichlet(comp.params.T, rng, size).transpose(0, 2, 1)


def sample_components(
    posterior: FactorizedDirichlet, rng: np.random.Generator, size: int
) -> List[np.ndarray]:
    return [sample_component(comp, rng, size) for comp in posterior.components]


def sample_pi_G(posterior: FactorizedDirichlet, config: SamplerConfig) -> List[np.ndarray]:
    """T draws of every component of π^G, one array per component."""
    chunks = run_chunked(config, lambda rng, size: sample_components(posterior, rng, size))
    return [np.concatenate(parts, axis=0) for parts in zip(*chunks)]
