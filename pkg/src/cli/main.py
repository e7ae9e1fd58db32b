"""Typer CLI for bidirected-bayes."""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import typer

from src.cli.console import emit, error_guard
from src.config.analysis import AnalysisConfig, UsageError, parse_model_prior
from src.data.tables import load_table
from src.pipeline.run import run_analyze, run_compare, run_models, run_prior_report, run_sample

app = typer.Typer(
    name="bbayes",
    help=(
        "bidirected-bayes: Bayesian model comparison and posterior summaries for the "
        "marginal independence models of three-way contingency tables."
    ),
    no_args_is_help=True,
)

LOG_LEVELS = {0: logging.WARNING, 1: logging.INFO}

TABLE_OPT = typer.Option(None, "--table", help="Table file (YAML/JSON, see docs/input-format.md)")
CONFIG_OPT = typer.Option(None, "--config", help="YAML analysis config; flags override it")
PRIOR_OPT = typer.Option(
    None, "--prior", help="Prior: jeffreys, uec, perks, empirical or power (default perks)"
)
IMAGINARY_OPT = typer.Option(None, "--imaginary", help="Imaginary table for --prior power")
W_OPT = typer.Option(None, "--w", help="Power-prior weight w (default 1/N*)")
ALPHA0_OPT = typer.Option(None, "--alpha0", help="Pre-prior α0 added to every cell")
FORMAT_OPT = typer.Option(None, "--format", help="Report format: text or json")
OUT_OPT = typer.Option(None, "--out", help="Write the report here instead of stdout")
MODEL_PRIOR_OPT = typer.Option(
    None, "--model-prior", help="Unnormalized model weights, e.g. 'SC+A=2,ASC=1' (default uniform)"
)


@app.callback()
def main(
    verbose: int = typer.Option(
        0, "--verbose", "-v", count=True, help="Log progress to stderr (-vv for debug)"
    ),
) -> None:
    logging.basicConfig(
        level=LOG_LEVELS.get(verbose, logging.DEBUG),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _resolve_config(
    config_path: Optional[Path],
    *,
    table: Optional[Path] = None,
    prior: Optional[str] = None,
    imaginary: Optional[Path] = None,
    w: Optional[float] = None,
    alpha0: Optional[float] = None,
    models: Optional[List[str]] = None,
    draws: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    fmt: Optional[str] = None,
    out: Optional[Path] = None,
    model_prior: Optional[str] = None,
) -> AnalysisConfig:
    """YAML config (if any) with command-line flags layered on top."""
    base = AnalysisConfig.from_yaml(config_path) if config_path else AnalysisConfig()
    data: Dict[str, Any] = base.payload()
    if table is not None:
        data["table"] = str(table)
    if prior is not None:
        data["prior"] = {"kind": prior, "imaginary": None, "weight": None, "alpha0": 0.0}
    if imaginary is not None:
        data["prior"]["imaginary"] = str(imaginary)
    if w is not None:
        data["prior"]["weight"] = w
    if alpha0 is not None:
        data["prior"]["alpha0"] = alpha0
    if models is not None:
        data["models"] = models
    for key, value in (("draws", draws), ("seed", seed), ("workers", workers)):
        if value is not None:
            data["sampler"][key] = value
    if fmt is not None:
        data["output"]["format"] = fmt
    if out is not None:
        data["output"]["path"] = str(out)
    if model_prior is not None:
        data["model_prior"] = parse_model_prior(model_prior)
    return AnalysisConfig.from_dict(data)


@app.command()
def analyze(
    table: Optional[Path] = TABLE_OPT,
    config: Optional[Path] = CONFIG_OPT,
    prior: Optional[str] = PRIOR_OPT,
    imaginary: Optional[Path] = IMAGINARY_OPT,
    w: Optional[float] = W_OPT,
    alpha0: Optional[float] = ALPHA0_OPT,
    model: Optional[List[str]] = typer.Option(
        None, "--model", help="Restrict to these models (repeatable); default all eight"
    ),
    model_prior: Optional[str] = MODEL_PRIOR_OPT,
    fmt: Optional[str] = FORMAT_OPT,
    out: Optional[Path] = OUT_OPT,
) -> None:
    """Posterior model probabilities and log marginal likelihoods of the models."""
    with error_guard():
        cfg = _resolve_config(
            config,
            table=table,
            prior=prior,
            imaginary=imaginary,
            w=w,
            alpha0=alpha0,
            models=model or None,
            fmt=fmt,
            out=out,
            model_prior=model_prior,
        )
        emit(run_analyze(cfg), cfg.output_format, cfg.output_path)


@app.command()
def sample(
    model: str = typer.Option(..., "--model", help="Model label, e.g. SC+A (any case/order)"),
    table: Optional[Path] = TABLE_OPT,
    config: Optional[Path] = CONFIG_OPT,
    prior: Optional[str] = PRIOR_OPT,
    imaginary: Optional[Path] = IMAGINARY_OPT,
    w: Optional[float] = W_OPT,
    alpha0: Optional[float] = ALPHA0_OPT,
    draws: Optional[int] = typer.Option(None, "--draws", help="Monte Carlo draws T (default 1000)"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Random seed (default 42)"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Sampling threads (default 1)"),
    fmt: Optional[str] = FORMAT_OPT,
    out: Optional[Path] = OUT_OPT,
) -> None:
    """Beta summaries of π^G and Monte Carlo λ summaries for one model."""
    with error_guard():
        cfg = _resolve_config(
            config,
            table=table,
            prior=prior,
            imaginary=imaginary,
            w=w,
            alpha0=alpha0,
            draws=draws,
            seed=seed,
            workers=workers,
            fmt=fmt,
            out=out,
        )
        emit(run_sample(cfg, model), cfg.output_format, cfg.output_path)


@app.command("prior-report")
def prior_report(
    table: Optional[Path] = TABLE_OPT,
    config: Optional[Path] = CONFIG_OPT,
    prior: Optional[str] = PRIOR_OPT,
    imaginary: Optional[Path] = IMAGINARY_OPT,
    w: Optional[float] = W_OPT,
    alpha0: Optional[float] = ALPHA0_OPT,
    fmt: Optional[str] = FORMAT_OPT,
    out: Optional[Path] = OUT_OPT,
) -> None:
    """Per-cell prior moments, variance ratio against Perks' prior, prior information."""
    with error_guard():
        cfg = _resolve_config(
            config,
            table=table,
            prior=prior,
            imaginary=imaginary,
            w=w,
            alpha0=alpha0,
            fmt=fmt,
            out=out,
        )
        emit(run_prior_report(cfg), cfg.output_format, cfg.output_path)


@app.command()
def models(
    table: Optional[Path] = TABLE_OPT,
    variables: Optional[str] = typer.Option(
        None, "--variables", help="Comma-separated variable names, e.g. A,S,C"
    ),
    fmt: str = typer.Option("text", "--format", help="Report format: text or json"),
    out: Optional[Path] = OUT_OPT,
) -> None:
    """List the eight models with D(G), zero constraints and implied independences."""
    with error_guard():
        if (table is None) == (variables is None):
            raise UsageError("Pass exactly one of --table or --variables")
        if fmt not in ("text", "json"):
            raise UsageError(f"Unknown format '{fmt}'; expected text or json")
        if table is not None:
            loaded = load_table(table)
            catalog = run_models(loaded.names, loaded.dims)
        else:
            catalog = run_models([v.strip() for v in variables.split(",") if v.strip()])
        emit(catalog, fmt, out)  # type: ignore[arg-type]


@app.command()
def compare(
    table: Optional[Path] = TABLE_OPT,
    config: Optional[Path] = CONFIG_OPT,
    model: Optional[List[str]] = typer.Option(None, "--model", help="Restrict to these models"),
    fmt: Optional[str] = FORMAT_OPT,
    out: Optional[Path] = OUT_OPT,
) -> None:
    """Score the models under Jeffreys, unit expected cell, empirical Bayes and Perks."""
    with error_guard():
        cfg = _resolve_config(config, table=table, models=model or None, fmt=fmt, out=out)
        emit(run_compare(cfg), cfg.output_format, cfg.output_path)


if __name__ == "__main__":
    app()
