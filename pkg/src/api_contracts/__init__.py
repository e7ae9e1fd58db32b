"""Report layer: pydantic models + builders that turn engine objects
(ModelPosterior, Beta and Monte Carlo summaries, prior diagnostics) into the
stable JSON/text report contract. See docs/output-files.md for the schema.
"""

from __future__ import annotations

SCHEMA_VERSION = 1
