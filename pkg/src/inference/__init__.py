from src.inference.marginal_likelihood import (
    ModelPosterior,
    factorized_log_dk,
    log_dk,
    log_marginal_likelihood,
    map_model,
    posterior_model_probs,
)
from src.inference.posterior import (
    DirichletComponent,
    FactorizedDirichlet,
    factorize,
    posterior_params,
    prior_params,
)
from src.inference.summaries import (
    DEFAULT_QUANTILES,
    BetaSummary,
    ParameterSummary,
    beta_summary,
    check_quantile_levels,
    component_summaries,
    posterior_summaries,
)

__all__ = [
    "DEFAULT_QUANTILES",
    "BetaSummary",
    "DirichletComponent",
    "FactorizedDirichlet",
    "ModelPosterior",
    "ParameterSummary",
    "beta_summary",
    "check_quantile_levels",
    "component_summaries",
    "factorize",
    "factorized_log_dk",
    "log_dk",
    "log_marginal_likelihood",
    "map_model",
    "posterior_model_probs",
    "posterior_params",
    "posterior_summaries",
    "prior_params",
]
