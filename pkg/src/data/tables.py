"""
Table file ingestion.

A table file is a YAML (or JSON) document::

    schema_version: 1
    name: antitoxin
    variables:
      - {name: A, levels: ["Yes", "No"], label: Antitoxin}
      - {name: S, levels: ["No", "Yes"]}
    counts: [15, 22, 6, 4]        # vec order, first variable fastest

or, instead of ``counts``, a ``cells`` list of ``{levels: [...], count: n}``
entries naming every cell once by its level labels.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

import numpy as np
import yaml

from src.table.contingency import ContingencyTable, InvalidCellError, Variable, vec_index

logger = logging.getLogger(__name__)

SUPPORTED_SCHEMA_VERSION = 1


class TableParseError(ValueError):
    """Raised when a table document violates the schema; names the offending field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _level_label(value: Any, field: str) -> str:
    if isinstance(value, bool):
        raise TableParseError(
            field, f"level {value!r} parsed as a boolean; quote it (e.g. \"Yes\", \"No\")"
        )
    if isinstance(value, str) or (isinstance(value, int)):
        return str(value)
    raise TableParseError(field, f"level labels must be strings or integers, got {value!r}")


def _parse_variables(raw: Any) -> List[Variable]:
    if not isinstance(raw, list) or not raw:
        raise TableParseError("variables", "expected a non-empty list")
    variables = []
    for i, item in enumerate(raw):
        field = f"variables[{i}]"
        if not isinstance(item, dict):
            raise TableParseError(field, "expected a mapping with name and levels")
        unknown = set(item) - {"name", "levels", "label"}
        if unknown:
            raise TableParseError(field, f"unknown keys {sorted(unknown)}")
        name = item.get("name")
        if not isinstance(name, str) or not name:
            raise TableParseError(f"{field}.name", "expected a non-empty string")
        levels = item.get("levels")
        if not isinstance(levels, list):
            raise TableParseError(f"{field}.levels", "expected a list of level labels")
        labels = tuple(_level_label(v, f"{field}.levels") for v in levels)
        label = item.get("label")
        try:
            variables.append(Variable(name, labels, None if label is None else str(label)))
        except InvalidCellError as exc:
            raise TableParseError(f"{field}.levels", str(exc)) from exc
    names = [v.name for v in variables]
    if len(set(names)) != len(names):
        raise TableParseError("variables", f"duplicate variable names {names}")
    return variables


def _parse_counts(raw: Any, n_cells: int) -> np.ndarray:
    if not isinstance(raw, list):
        raise TableParseError("counts", "expected a flat list of numbers")
    if len(raw) != n_cells:
        raise TableParseError("counts", f"expected {n_cells} entries, got {len(raw)}")
    for i, value in enumerate(raw):
        if not _is_number(value):
            raise TableParseError(f"counts[{i}]", f"expected a number, got {value!r}")
        if not np.isfinite(value) or value < 0:
            raise TableParseError(f"counts[{i}]", f"count must be finite and >= 0, got {value}")
    return np.asarray(raw, dtype=float)


def _parse_cells(raw: Any, variables: Sequence[Variable]) -> np.ndarray:
    if not isinstance(raw, list):
        raise TableParseError("cells", "expected a list of {levels, count} entries")
    dims = [v.cardinality for v in variables]
    counts = np.zeros(int(np.prod(dims)))
    seen: Dict[int, int] = {}
    for i, item in enumerate(raw):
        field = f"cells[{i}]"
        if not isinstance(item, dict) or set(item) != {"levels", "count"}:
            raise TableParseError(field, "expected exactly the keys levels and count")
        levels = item["levels"]
        if not isinstance(levels, list) or len(levels) != len(variables):
            raise TableParseError(f"{field}.levels", f"expected {len(variables)} level labels")
        try:
            cell = [
                var.level_index(_level_label(v, f"{field}.levels"))
                for var, v in zip(variables, levels)
            ]
        except InvalidCellError as exc:
            raise TableParseError(f"{field}.levels", str(exc)) from exc
        count = item["count"]
        if not _is_number(count) or not np.isfinite(count) or count < 0:
            raise TableParseError(f"{field}.count", f"count must be a number >= 0, got {count!r}")
        k = vec_index(cell, dims)
        if k in seen:
            raise TableParseError(field, f"duplicate cell, already given by cells[{seen[k]}]")
        seen[k] = i
        counts[k] = float(count)
    if len(seen) != counts.size:
        raise TableParseError("cells", f"expected {counts.size} cells, got {len(seen)}")
    return counts


def parse_table_file(data: Union[bytes, str]) -> ContingencyTable:
    """Parse a table document into a validated :class:`ContingencyTable`."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise TableParseError("document", "input is not valid UTF-8") from exc
    try:
        doc = yaml.safe_load(data)
    except yaml.YAMLError as exc:
        raise TableParseError("document", f"not valid YAML/JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise TableParseError("document", "expected a mapping at the top level")

    unknown = set(doc) - {"schema_version", "name", "variables", "counts", "cells"}
    if unknown:
        raise TableParseError("document", f"unknown keys {sorted(unknown)}")
    version = doc.get("schema_version", SUPPORTED_SCHEMA_VERSION)
    if version != SUPPORTED_SCHEMA_VERSION:
        raise TableParseError(
            "schema_version",
            f"unsupported version {version!r}; expected {SUPPORTED_SCHEMA_VERSION}",
        )

    variables = _parse_variables(doc.get("variables"))
    has_counts = "counts" in doc
    has_cells = "cells" in doc
    if has_counts == has_cells:
        raise TableParseError("counts", "give exactly one of counts or cells")
    n_cells = int(np.prod([v.cardinality for v in variables]))
    if has_counts:
        counts = _parse_counts(doc["counts"], n_cells)
    else:
        counts = _parse_cells(doc["cells"], variables)

    name = doc.get("name")
    table = ContingencyTable(tuple(variables), counts, None if name is None else str(name))
    logger.info(
        "Parsed table %s: dims %s, N = %g", table.name or "<unnamed>", table.dims, table.total
    )
    return table


def load_table(path: Union[str, Path]) -> ContingencyTable:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Table file not found: {path}")
    return parse_table_file(path.read_bytes())


def dump_table(table: ContingencyTable) -> bytes:
    """Serialize ``table`` in the ``counts`` form; integral counts stay integers."""
    variables = []
    for var in table.variables:
        entry: Dict[str, Any] = {"name": var.name, "levels": list(var.levels)}
        if var.label is not None:
            entry["label"] = var.label
        variables.append(entry)
    if np.array_equal(table.counts, np.round(table.counts)):
        counts: List[Any] = [int(round(c)) for c in table.counts]
    else:
        counts = [float(c) for c in table.counts]
    doc: Dict[str, Any] = {"schema_version": SUPPORTED_SCHEMA_VERSION}
    if table.name is not None:
        doc["name"] = table.name
    doc["variables"] = variables
    doc["counts"] = counts
    return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True).encode("utf-8")
