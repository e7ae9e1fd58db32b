"""End-to-end analysis pipeline: load, build the prior, score, sample, report."""

from __future__ import annotations

import logging
from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Tuple

from src.api_contracts.build import (
    build_analysis_report,
    build_dataset_meta,
    build_joint_rows,
    build_lambda_rows,
    build_model_catalog,
    build_parameter_rows,
    build_prior_report,
)
from src.api_contracts.models import AnalysisReport, ComparisonReport, ModelCatalog, PriorReport
from src.config.analysis import COMPARISON_PRIORS, AnalysisConfig, PriorConfig, UsageError
from src.data.tables import load_table
from src.graph.bidirected import BidirectedGraph
from src.graph.models import enumerate_models, model_label, parse_model_label
from src.inference.marginal_likelihood import map_model, posterior_model_probs
from src.inference.posterior import posterior_params
from src.inference.summaries import posterior_summaries
from src.marglog.scheme import marginal_scheme
from src.montecarlo.summary import sample_lambda
from src.priors.dirichlet import AlphaTable, PriorSpec, make_prior
from src.table.contingency import ContingencyTable

logger = logging.getLogger(__name__)


def resolve_table(config: AnalysisConfig) -> ContingencyTable:
    if not config.table_path:
        raise UsageError("A table file is required (--table PATH or `table:` in the config)")
    return load_table(config.table_path)


def build_prior_spec(prior: PriorConfig) -> PriorSpec:
    if prior.kind != "power":
        return PriorSpec(kind=prior.kind)  # type: ignore[arg-type]
    imaginary = load_table(prior.imaginary_path) if prior.imaginary_path else None
    return PriorSpec(kind="power", imaginary=imaginary, weight=prior.weight, alpha0=prior.alpha0)


def resolve_prior(config: AnalysisConfig, table: ContingencyTable) -> AlphaTable:
    alpha = make_prior(build_prior_spec(config.prior), table)
    logger.info("Prior %s: α = %g over %d cells", alpha.spec.kind, alpha.total, alpha.n_cells)
    return alpha


def select_models(
    table: ContingencyTable, labels: Optional[Sequence[str]]
) -> List[BidirectedGraph]:
    """Requested models in canonical order; None selects all eight."""
    models = enumerate_models(table.names)
    if labels is None:
        return models
    wanted = {parse_model_label(label, models) for label in labels if label.strip()}
    if not wanted:
        raise UsageError("Model filter is empty")
    return [g for g in models if g in wanted]


def model_prior_weights(
    models: Sequence[BidirectedGraph], weights: Optional[Dict[str, float]]
) -> Tuple[Optional[List[float]], Dict[str, float]]:
    """Weights aligned with ``models`` (default 1) and keyed by canonical label."""
    if not weights:
        return None, {}
    candidates = enumerate_models(models[0].vertices)
    by_graph = {parse_model_label(label, candidates): w for label, w in weights.items()}
    aligned = [by_graph.get(g, 1.0) for g in models]
    return aligned, {model_label(g): w for g, w in zip(models, aligned)}


def _score(
    config: AnalysisConfig, table: ContingencyTable, alpha: AlphaTable
) -> Tuple[list, Dict[str, float]]:
    models = select_models(table, config.models)
    aligned, labelled = model_prior_weights(models, config.model_prior)
    results = posterior_model_probs(models, alpha, table, aligned)
    return results, labelled


def run_analyze(config: AnalysisConfig, table: Optional[ContingencyTable] = None) -> AnalysisReport:
    """Score the requested models and identify the MAP model."""
    table = table or resolve_table(config)
    alpha = resolve_prior(config, table)
    results, weights = _score(config, table, alpha)
    best = map_model(results)
    logger.info("MAP model %s (%.4f)", best.label, best.post_prob)
    return build_analysis_report(config, table, alpha, results, best.label, weights)


def run_sample(
    config: AnalysisConfig, label: str, table: Optional[ContingencyTable] = None
) -> AnalysisReport:
    """Scores plus analytic π summaries and Monte Carlo λ summaries for one model."""
    table = table or resolve_table(config)
    graph = parse_model_label(label, enumerate_models(table.names))
    alpha = resolve_prior(config, table)
    results, weights = _score(config, table, alpha)

    posterior = posterior_params(graph, alpha, table)
    levels = config.sampler.quantile_levels
    summaries = posterior_summaries(posterior, levels)
    sampled = sample_lambda(graph, posterior, marginal_scheme(graph, table.dims), config.sampler)
    return build_analysis_report(
        config,
        table,
        alpha,
        results,
        map_model(results).label,
        weights,
        report="sample",
        sampled_model=model_label(graph),
        parameters=build_parameter_rows(posterior, summaries),
        lambdas=build_lambda_rows(sampled.lambdas),
        joint=build_joint_rows(sampled.joint),
    )


def run_prior_report(
    config: AnalysisConfig, table: Optional[ContingencyTable] = None
) -> PriorReport:
    table = table or resolve_table(config)
    return build_prior_report(resolve_prior(config, table), table)


def run_models(
    variables: Sequence[str], dims: Optional[Sequence[int]] = None
) -> ModelCatalog:
    """The eight candidate graphs with D(G), constraints and implied independences.

    The marginal scheme does not depend on the number of levels, so binary
    variables are assumed when ``dims`` is omitted.
    """
    models = enumerate_models(variables)
    return build_model_catalog(variables, models, dims or [2] * len(variables))


def run_compare(
    config: AnalysisConfig,
    table: Optional[ContingencyTable] = None,
    priors: Sequence[str] = COMPARISON_PRIORS,
) -> ComparisonReport:
    """The requested models scored under each preset prior."""
    table = table or resolve_table(config)
    runs = [
        run_analyze(replace(config, prior=PriorConfig(kind=kind)), table=table) for kind in priors
    ]
    return ComparisonReport(
        dataset=build_dataset_meta(table),
        model_labels=[m.label for m in runs[0].models] if runs else [],
        runs=[run.model_copy(update={"report": "compare"}) for run in runs],
    )
