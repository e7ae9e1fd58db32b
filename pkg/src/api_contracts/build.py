"""Builders: engine objects (tables, priors, ModelPosterior, summaries) -> report
contract pydantic models (src.api_contracts.models).
"""

from __future__ import annotations

from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np

from src import __version__
from src.api_contracts.models import (
    AnalysisReport,
    CatalogEntry,
    DatasetMeta,
    IndependenceRow,
    JointRow,
    LambdaRow,
    ModelCatalog,
    ModelResult,
    ParameterRow,
    PriorCellRow,
    PriorMeta,
    PriorReport,
    QuantileValue,
    Reproducibility,
    VariableMeta,
)
from src.config.analysis import AnalysisConfig
from src.graph.bidirected import (
    BidirectedGraph,
    disconnected_sets,
    global_independences,
    markov_independences,
)
from src.graph.models import classify, model_label
from src.inference.marginal_likelihood import ModelPosterior
from src.inference.posterior import FactorizedDirichlet
from src.inference.summaries import ParameterSummary
from src.marglog.scheme import marginal_scheme
from src.montecarlo.sampler import RNG_ALGORITHM
from src.montecarlo.summary import SampleSummary
from src.priors.diagnostics import (
    cell_variance_ratios,
    is_symmetric,
    perks_variance,
    prior_cell_moments,
    prior_information,
    prior_information_fraction,
    variance_ratio,
)
from src.priors.dirichlet import AlphaTable
from src.table.contingency import ContingencyTable


def _quantiles(values: Mapping[float, float]) -> List[QuantileValue]:
    return [QuantileValue(level=q, value=v) for q, v in sorted(values.items())]


def _edge_names(graph: BidirectedGraph) -> List[str]:
    order = {v: i for i, v in enumerate(graph.vertices)}
    pairs = sorted(
        (tuple(sorted(e, key=order.__getitem__)) for e in graph.edges),
        key=lambda p: (order[p[0]], order[p[1]]),
    )
    return [f"{a}<->{b}" for a, b in pairs]


def build_dataset_meta(table: ContingencyTable) -> DatasetMeta:
    return DatasetMeta(
        name=table.name,
        variables=[
            VariableMeta(name=v.name, levels=list(v.levels), label=v.label) for v in table.variables
        ],
        dims=list(table.dims),
        n_cells=table.n_cells,
        total=table.total,
    )


def build_prior_meta(alpha: AlphaTable, table: Optional[ContingencyTable]) -> PriorMeta:
    spec = alpha.spec
    power = spec is not None and spec.kind == "power"
    return PriorMeta(
        kind=spec.kind if spec is not None else "custom",
        description=spec.describe() if spec is not None else "custom α",
        alpha_total=alpha.total,
        prior_information=prior_information(alpha),
        prior_information_fraction=prior_information_fraction(
            alpha, table.total if table is not None else None
        ),
        weight=spec.effective_weight() if power else None,
        alpha0=spec.alpha0 if power else None,
        imaginary_total=spec.imaginary.total if power and spec.imaginary is not None else None,
    )


def build_model_result(result: ModelPosterior, prior_weight: float = 1.0) -> ModelResult:
    kind = classify(result.graph)
    return ModelResult(
        label=result.label,
        kind=kind.kind,
        corner=kind.corner,
        edges=_edge_names(result.graph),
        disconnected_sets=["".join(d) for d in disconnected_sets(result.graph)],
        log_marginal_likelihood=result.log_ml,
        log_bayes_factor_vs_map=result.log_bayes_factor_vs_map,
        posterior_probability=result.post_prob,
        prior_weight=prior_weight,
    )


def build_parameter_rows(
    posterior: FactorizedDirichlet, summaries: Sequence[ParameterSummary]
) -> List[ParameterRow]:
    kinds = {comp.label: comp.kind for comp in posterior.components}
    return [
        ParameterRow(
            component=row.component,
            component_kind=kinds[row.component],
            name=row.name,
            a=row.summary.a,
            b=row.summary.b,
            mean=row.summary.mean,
            sd=row.summary.sd,
            quantiles=_quantiles(row.summary.quantiles),
        )
        for row in summaries
    ]


def build_lambda_rows(summary: SampleSummary) -> List[LambdaRow]:
    return [
        LambdaRow(
            name=q.name,
            marginal=q.marginal or "",
            mean=q.mean,
            sd=q.sd,
            quantiles=_quantiles(q.quantiles),
            exact_zero=q.exact_zero,
        )
        for q in summary.quantities
    ]


def build_joint_rows(summary: Optional[SampleSummary]) -> List[JointRow]:
    if summary is None:
        return []
    return [
        JointRow(name=q.name, mean=q.mean, sd=q.sd, quantiles=_quantiles(q.quantiles))
        for q in summary.quantities
    ]


def build_reproducibility(config: AnalysisConfig) -> Reproducibility:
    sampler = config.sampler
    return Reproducibility(
        seed=int(sampler.seed),
        draws=int(sampler.draws),
        quantile_levels=list(sampler.quantile_levels),
        quantile_rule="linear (numpy.quantile, inclusive)",
        rng=RNG_ALGORITHM,
        software_version=__version__,
        config_hash=config.config_hash,
    )


def build_analysis_report(
    config: AnalysisConfig,
    table: ContingencyTable,
    alpha: AlphaTable,
    results: Sequence[ModelPosterior],
    map_label: str,
    prior_weights: Optional[Dict[str, float]] = None,
    **extra,
) -> AnalysisReport:
    weights = prior_weights or {}
    return AnalysisReport(
        dataset=build_dataset_meta(table),
        prior=build_prior_meta(alpha, table),
        models=[build_model_result(r, weights.get(r.label, 1.0)) for r in results],
        map_model=map_label,
        reproducibility=build_reproducibility(config),
        **extra,
    )


def _cell_name(dims: Sequence[int], k: int) -> str:
    idx = np.unravel_index(k, tuple(dims), order="F")
    return f"({','.join(str(int(j) + 1) for j in idx)})"


def build_prior_report(alpha: AlphaTable, table: ContingencyTable) -> PriorReport:
    moments = prior_cell_moments(alpha)
    ratios = cell_variance_ratios(alpha)
    symmetric = is_symmetric(alpha)
    return PriorReport(
        dataset=build_dataset_meta(table),
        prior=build_prior_meta(alpha, table),
        symmetric=symmetric,
        variance_ratio=variance_ratio(alpha.total) if symmetric else None,
        perks_variance=perks_variance(alpha.n_cells),
        cells=[
            PriorCellRow(
                cell=_cell_name(alpha.dims, k),
                alpha=float(alpha.alpha[k]),
                mean=float(moments.mean[k]),
                variance=float(moments.variance[k]),
                variance_ratio=float(ratios[k]),
            )
            for k in range(alpha.n_cells)
        ],
    )


def build_catalog_entry(graph: BidirectedGraph, dims: Sequence[int]) -> CatalogEntry:
    kind = classify(graph)
    scheme = marginal_scheme(graph, dims)
    independences = [
        IndependenceRow(statement=str(s), property="connected_set")
        for s in markov_independences(graph)
    ]
    independences.extend(
        IndependenceRow(
            statement=" _||_ ".join("".join(part) for part in parts), property="global"
        )
        for parts in global_independences(graph)
    )
    return CatalogEntry(
        label=model_label(graph),
        kind=kind.kind,
        corner=kind.corner,
        edges=_edge_names(graph),
        disconnected_sets=["".join(d) for d in disconnected_sets(graph)],
        zero_constraints=[
            f"λ_{''.join(effect)} = 0 in M_{''.join(marginal)}"
            for marginal, effect in scheme.zero_constrained
        ],
        marginals=[f"M_{''.join(m)}" for m in scheme.ordered_marginals],
        independences=independences,
    )


def build_model_catalog(
    variables: Sequence[str], models: Sequence[BidirectedGraph], dims: Sequence[int]
) -> ModelCatalog:
    return ModelCatalog(
        variables=list(variables),
        models=[build_catalog_entry(g, dims) for g in models],
    )
