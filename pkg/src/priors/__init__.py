from src.priors.diagnostics import (
    CellMoments,
    cell_variance_ratios,
    is_symmetric,
    perks_variance,
    prior_cell_moments,
    prior_information,
    prior_information_fraction,
    prior_variance_ratio,
    variance_ratio,
)
from src.priors.dirichlet import (
    PRIOR_KINDS,
    AlphaTable,
    PriorError,
    PriorKind,
    PriorSpec,
    collapse_alpha,
    conditional_alpha,
    conditional_alpha_matrix,
    make_prior,
)

__all__ = [
    "PRIOR_KINDS",
    "AlphaTable",
    "CellMoments",
    "PriorError",
    "PriorKind",
    "PriorSpec",
    "cell_variance_ratios",
    "collapse_alpha",
    "conditional_alpha",
    "conditional_alpha_matrix",
    "is_symmetric",
    "make_prior",
    "perks_variance",
    "prior_cell_moments",
    "prior_information",
    "prior_information_fraction",
    "prior_variance_ratio",
    "variance_ratio",
]
