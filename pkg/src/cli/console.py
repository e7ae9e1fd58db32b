"""Terminal output and error-to-exit-code helpers for the CLI."""

from __future__ import annotations

import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional, Union

import typer
from pydantic import BaseModel

from src.api_contracts.export import ReportFormat, emit_report, write_report
from src.config.analysis import UsageError
from src.graph.models import UnknownModelError

logger = logging.getLogger(__name__)

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


def fail(message: str, code: int) -> None:
    typer.echo(f"error: {message}", err=True)
    raise typer.Exit(code=code)


@contextmanager
def error_guard() -> Iterator[None]:
    """Map engine exceptions to one-line messages and exit codes."""
    try:
        yield
    except (UsageError, UnknownModelError) as exc:
        fail(str(exc), EXIT_USAGE)
    except (ArithmeticError, FloatingPointError) as exc:
        logger.debug("numerical failure", exc_info=True)
        fail(str(exc), EXIT_NUMERICAL)
    except (ValueError, OSError) as exc:
        logger.debug("data failure", exc_info=True)
        fail(str(exc), EXIT_DATA)


def emit(report: BaseModel, fmt: ReportFormat, out: Optional[Union[str, Path]]) -> None:
    payload = emit_report(report, fmt)
    path = write_report(payload, out)
    if path is None:
        typer.echo(payload.decode("utf-8"), nl=False)
    else:
        typer.echo(f"Wrote {path}", err=True)
