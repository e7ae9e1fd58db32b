"""Analysis configuration."""

from src.config.analysis import (
    COMPARISON_PRIORS,
    PRIOR_ALIASES,
    AnalysisConfig,
    PriorConfig,
    UsageError,
    normalize_prior_kind,
    parse_model_prior,
)

__all__ = [
    "COMPARISON_PRIORS",
    "PRIOR_ALIASES",
    "AnalysisConfig",
    "PriorConfig",
    "UsageError",
    "normalize_prior_kind",
    "parse_model_prior",
]
