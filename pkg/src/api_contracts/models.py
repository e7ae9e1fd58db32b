"""Pydantic v2 models for the bidirected-bayes report contract.

Source of truth for docs/output-files.md; keep that doc in sync with this
module. Field names are snake_case on the wire and numbers are emitted at full
precision; rounding only happens in the text renderer.
"""

from __future__ import annotations

from typing import List, Literal, Optional

from pydantic import BaseModel, Field

from src.api_contracts import SCHEMA_VERSION

GraphKind = Literal["independence", "edge", "gamma", "saturated"]
ComponentKind = Literal["marginal", "conditional"]
ReportKind = Literal["analyze", "sample", "compare"]


class VariableMeta(BaseModel):
    name: str
    levels: List[str]
    label: Optional[str] = None


class DatasetMeta(BaseModel):
    name: Optional[str] = None
    variables: List[VariableMeta]
    dims: List[int]
    n_cells: int
    total: float


class PriorMeta(BaseModel):
    kind: str
    description: str
    alpha_total: float
    # w·N* + |I|·α0 for power priors, Σα otherwise
    prior_information: float
    prior_information_fraction: float
    weight: Optional[float] = None
    alpha0: Optional[float] = None
    imaginary_total: Optional[float] = None


class QuantileValue(BaseModel):
    level: float
    value: float


class ModelResult(BaseModel):
    label: str
    kind: GraphKind
    corner: Optional[str] = None
    edges: List[str]
    disconnected_sets: List[str]
    log_marginal_likelihood: float
    log_bayes_factor_vs_map: float
    posterior_probability: float
    prior_weight: float = 1.0


class ParameterRow(BaseModel):
    """Analytic Beta(a, b) marginal of one π^G cell."""

    component: str
    component_kind: ComponentKind
    name: str
    a: float
    b: float
    mean: float
    sd: float
    quantiles: List[QuantileValue]


class LambdaRow(BaseModel):
    """Monte Carlo summary of one marginal log-linear parameter."""

    name: str
    marginal: str
    mean: float
    sd: float
    quantiles: List[QuantileValue]
    exact_zero: bool = False


class JointRow(BaseModel):
    """Monte Carlo summary of one full-table cell probability π(i)."""

    name: str
    mean: float
    sd: float
    quantiles: List[QuantileValue]


class Reproducibility(BaseModel):
    seed: int
    draws: int
    quantile_levels: List[float]
    quantile_rule: str
    rng: str
    software_version: str
    config_hash: str


class AnalysisReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    report: ReportKind = "analyze"
    dataset: DatasetMeta
    prior: PriorMeta
    models: List[ModelResult] = Field(default_factory=list)
    map_model: str
    sampled_model: Optional[str] = None
    parameters: List[ParameterRow] = Field(default_factory=list)
    lambdas: List[LambdaRow] = Field(default_factory=list)
    joint: List[JointRow] = Field(default_factory=list)
    reproducibility: Reproducibility


class ComparisonReport(BaseModel):
    """`bbayes compare`: the same models scored under several priors."""

    schema_version: int = SCHEMA_VERSION
    report: Literal["compare"] = "compare"
    dataset: DatasetMeta
    model_labels: List[str]
    runs: List[AnalysisReport] = Field(default_factory=list)


class PriorCellRow(BaseModel):
    cell: str
    alpha: float
    mean: float
    variance: float
    variance_ratio: float


class PriorReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    report: Literal["prior"] = "prior"
    dataset: DatasetMeta
    prior: PriorMeta
    symmetric: bool
    # 2/(α+1) for symmetric priors; None otherwise (see cells[].variance_ratio)
    variance_ratio: Optional[float] = None
    perks_variance: float
    cells: List[PriorCellRow] = Field(default_factory=list)


class IndependenceRow(BaseModel):
    statement: str
    property: Literal["connected_set", "global"]


class CatalogEntry(BaseModel):
    label: str
    kind: GraphKind
    corner: Optional[str] = None
    edges: List[str]
    disconnected_sets: List[str]
    zero_constraints: List[str]
    marginals: List[str]
    independences: List[IndependenceRow] = Field(default_factory=list)


class ModelCatalog(BaseModel):
    schema_version: int = SCHEMA_VERSION
    report: Literal["models"] = "models"
    variables: List[str]
    models: List[CatalogEntry] = Field(default_factory=list)
