"""Renders report models as JSON or aligned text tables and writes them out.

JSON keeps every number at full precision. Text output rounds for display:
probabilities as percentages to 1 decimal, log marginal likelihoods to 2
decimals, π and λ summaries to 3 decimals.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Literal, Optional, Union

import pandas as pd
from pydantic import BaseModel

from src.api_contracts.models import (
    AnalysisReport,
    ComparisonReport,
    DatasetMeta,
    ModelCatalog,
    PriorMeta,
    PriorReport,
    QuantileValue,
    Reproducibility,
)

logger = logging.getLogger(__name__)

ReportFormat = Literal["text", "json"]


def _pct(p: float) -> str:
    return f"{100.0 * p:.1f}"


def _q_label(level: float) -> str:
    return f"Q{level:g}"


def _quantile_cols(quantiles: List[QuantileValue], digits: int = 3) -> dict:
    return {_q_label(q.level): f"{q.value:.{digits}f}" for q in quantiles}


def _table(df: pd.DataFrame, index: bool = False) -> str:
    return df.to_string(index=index)


def _dataset_lines(dataset: DatasetMeta) -> List[str]:
    names = " x ".join(v.name for v in dataset.variables)
    dims = "x".join(str(d) for d in dataset.dims)
    return [f"Dataset: {dataset.name or '<unnamed>'} ({names} = {dims}, N = {dataset.total:g})"]


def _prior_lines(prior: PriorMeta) -> List[str]:
    return [
        f"Prior:   {prior.description}",
        f"         α = {prior.alpha_total:.6g}, prior information fraction "
        f"{prior.prior_information_fraction:.4f}",
    ]


def _repro_lines(repro: Reproducibility) -> List[str]:
    levels = ", ".join(f"{q:g}" for q in repro.quantile_levels)
    return [
        f"Reproducibility: seed {repro.seed}, draws {repro.draws}, quantiles [{levels}] "
        f"({repro.quantile_rule}), rng {repro.rng}, version {repro.software_version}, "
        f"config {repro.config_hash}"
    ]


def _model_table(report: AnalysisReport) -> str:
    labels = [m.label for m in report.models]
    df = pd.DataFrame(
        [
            [_pct(m.posterior_probability) for m in report.models],
            [f"{m.log_marginal_likelihood:.2f}" for m in report.models],
            [f"{m.log_bayes_factor_vs_map:.2f}" for m in report.models],
        ],
        index=["Posterior prob (%)", "Log marginal likelihood", "Log BF vs MAP"],
        columns=labels,
    )
    return _table(df, index=True)


def render_analysis(report: AnalysisReport) -> str:
    lines = _dataset_lines(report.dataset) + _prior_lines(report.prior) + [""]
    lines.append("Posterior model probabilities")
    lines.append(_model_table(report))
    best = next(m for m in report.models if m.label == report.map_model)
    lines.append(f"MAP model: {best.label} ({_pct(best.posterior_probability)}%)")

    if report.parameters:
        lines += ["", f"Posterior summaries of model parameters ({report.sampled_model})"]
        rows = [
            {
                "Parameter": p.name,
                "a": f"{p.a:.3f}",
                "b": f"{p.b:.3f}",
                "Mean": f"{p.mean:.3f}",
                "St.dev.": f"{p.sd:.3f}",
                **_quantile_cols(p.quantiles),
            }
            for p in report.parameters
        ]
        lines.append(_table(pd.DataFrame(rows)))
    if report.lambdas:
        lines += ["", f"Posterior summaries for lambda ({report.sampled_model})"]
        rows = [
            {
                "Marginal table": lam.marginal,
                "Parameter": lam.name,
                "Mean": f"{lam.mean:.3f}",
                "St.dev.": f"{lam.sd:.3f}",
                **_quantile_cols(lam.quantiles),
                "Constraint": "= 0" if lam.exact_zero else "",
            }
            for lam in report.lambdas
        ]
        lines.append(_table(pd.DataFrame(rows)))
    lines += [""] + _repro_lines(report.reproducibility)
    return "\n".join(lines) + "\n"


def render_comparison(report: ComparisonReport) -> str:
    lines = _dataset_lines(report.dataset) + [""]
    index = [run.prior.description for run in report.runs]
    probs = pd.DataFrame(
        [[_pct(m.posterior_probability) for m in run.models] for run in report.runs],
        index=index,
        columns=report.model_labels,
    )
    log_ml = pd.DataFrame(
        [[f"{m.log_marginal_likelihood:.2f}" for m in run.models] for run in report.runs],
        index=index,
        columns=report.model_labels,
    )
    lines += ["Posterior model probabilities (%)", _table(probs, index=True), ""]
    lines += ["Log marginal likelihoods", _table(log_ml, index=True)]
    if report.runs:
        lines += [""] + _repro_lines(report.runs[0].reproducibility)
    return "\n".join(lines) + "\n"


def render_prior(report: PriorReport) -> str:
    lines = _dataset_lines(report.dataset) + _prior_lines(report.prior)
    if report.variance_ratio is not None:
        lines.append(f"Variance ratio vs Perks: {report.variance_ratio:.4f} (symmetric prior)")
    else:
        ratios = [c.variance_ratio for c in report.cells]
        lines.append(
            f"Variance ratio vs Perks: {min(ratios):.4f} to {max(ratios):.4f} across cells"
        )
    lines.append(f"Perks cell variance (|I|-1)/(2|I|^2): {report.perks_variance:.6f}")
    lines.append("")
    rows = [
        {
            "Cell": c.cell,
            "alpha": f"{c.alpha:.4f}",
            "Mean": f"{c.mean:.4f}",
            "Variance": f"{c.variance:.6f}",
            "VR": f"{c.variance_ratio:.4f}",
        }
        for c in report.cells
    ]
    lines.append(_table(pd.DataFrame(rows)))
    return "\n".join(lines) + "\n"


def render_catalog(catalog: ModelCatalog) -> str:
    lines = [f"Variables: {', '.join(catalog.variables)}", ""]
    for i, entry in enumerate(catalog.models, start=1):
        title = f"Model {i}: {entry.label} ({entry.kind}"
        title += f", corner {entry.corner})" if entry.corner else ")"
        lines.append(title)
        lines.append(f"  edges:             {', '.join(entry.edges) or '-'}")
        lines.append(f"  D(G):              {', '.join(entry.disconnected_sets) or '-'}")
        lines.append(f"  marginals:         {', '.join(entry.marginals)}")
        lines.append(f"  zero constraints:  {'; '.join(entry.zero_constraints) or '-'}")
        for row in entry.independences:
            lines.append(f"  {row.property + ':':19}{row.statement}")
        lines.append("")
    return "\n".join(lines)


def render_text(report: BaseModel) -> str:
    if isinstance(report, AnalysisReport):
        return render_analysis(report)
    if isinstance(report, ComparisonReport):
        return render_comparison(report)
    if isinstance(report, PriorReport):
        return render_prior(report)
    if isinstance(report, ModelCatalog):
        return render_catalog(report)
    raise TypeError(f"No text renderer for {type(report).__name__}")


def emit_report(report: BaseModel, fmt: ReportFormat = "text") -> bytes:
    if fmt == "json":
        return (report.model_dump_json(indent=2) + "\n").encode("utf-8")
    if fmt == "text":
        return render_text(report).encode("utf-8")
    raise ValueError(f"Unknown report format '{fmt}'")


def write_report(payload: bytes, path: Optional[Union[str, Path]]) -> Optional[Path]:
    """Write ``payload`` to ``path`` creating parent directories; None means stdout."""
    if path is None:
        return None
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(payload)
    logger.info("Wrote report to %s", path)
    return path
