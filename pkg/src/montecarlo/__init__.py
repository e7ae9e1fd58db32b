from src.montecarlo.reconstruct import reconstruct_full_pi
from src.montecarlo.sampler import (
    CHUNK_SIZE,
    DEFAULT_DRAWS,
    DEFAULT_SEED,
    RNG_ALGORITHM,
    SamplerConfig,
    chunk_generators,
    chunk_sizes,
    run_chunked,
    sample_component,
    sample_components,
    sample_dirichlet,
    sample_pi_G,
)
from src.montecarlo.summary import (
    QUANTILE_RULE,
    ZERO_TOL,
    ConstraintViolationError,
    LambdaSampleResult,
    QuantitySummary,
    SampleSummary,
    sample_lambda,
    summarize_columns,
)

__all__ = [
    "CHUNK_SIZE",
    "DEFAULT_DRAWS",
    "DEFAULT_SEED",
    "QUANTILE_RULE",
    "RNG_ALGORITHM",
    "ZERO_TOL",
    "ConstraintViolationError",
    "LambdaSampleResult",
    "QuantitySummary",
    "SampleSummary",
    "SamplerConfig",
    "chunk_generators",
    "chunk_sizes",
    "reconstruct_full_pi",
    "run_chunked",
    "sample_component",
    "sample_components",
    "sample_dirichlet",
    "sample_lambda",
    "sample_pi_G",
    "summarize_columns",
]
