"""Analysis configuration."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

import yaml

from src.montecarlo.sampler import SamplerConfig
from src.priors.dirichlet import PRIOR_KINDS

OutputFormat = Literal["text", "json"]

# Short names accepted on the command line and in YAML.
PRIOR_ALIASES = {
    "jeffreys": "jeffreys",
    "uec": "unit_expected_cell",
    "unit_expected_cell": "unit_expected_cell",
    "perks": "perks_uip",
    "perks_uip": "perks_uip",
    "uip": "perks_uip",
    "empirical": "empirical_bayes",
    "empirical_bayes": "empirical_bayes",
    "ebp": "empirical_bayes",
    "power": "power",
}

# Presets compared side by side by `bbayes compare`.
COMPARISON_PRIORS = ("jeffreys", "unit_expected_cell", "empirical_bayes", "perks_uip")


class UsageError(ValueError):
    """Raised for option combinations that cannot describe a run."""


def normalize_prior_kind(name: str) -> str:
    key = str(name).strip().lower().replace("-", "_")
    if key not in PRIOR_ALIASES:
        raise UsageError(
            f"Unknown prior '{name}'; expected one of jeffreys, uec, perks, empirical, power"
        )
    return PRIOR_ALIASES[key]


@dataclass
class PriorConfig:
    kind: str = "perks_uip"
    imaginary_path: Optional[str] = None
    weight: Optional[float] = None
    alpha0: float = 0.0

    def validate(self) -> None:
        self.kind = normalize_prior_kind(self.kind)
        assert self.kind in PRIOR_KINDS
        if self.kind != "power":
            if self.imaginary_path or self.weight is not None or self.alpha0:
                raise UsageError(
                    "--imaginary, --w and --alpha0 only apply to --prior power"
                )
            return
        if not self.imaginary_path:
            raise UsageError("--prior power needs --imaginary PATH")
        if self.weight is not None and not self.weight > 0:
            raise UsageError(f"Power-prior weight must be > 0, got {self.weight}")
        if self.alpha0 < 0:
            raise UsageError(f"alpha0 must be >= 0, got {self.alpha0}")

    def __post_init__(self) -> None:
        self.validate()


@dataclass
class AnalysisConfig:
    table_path: Optional[str] = None
    prior: PriorConfig = field(default_factory=PriorConfig)
    # None scores all eight models; an explicit empty list is a usage error.
    models: Optional[List[str]] = None
    sampler: SamplerConfig = field(default_factory=SamplerConfig)
    output_format: OutputFormat = "text"
    output_path: Optional[str] = None
    model_prior: Optional[Dict[str, float]] = None

    def validate(self) -> None:
        if self.output_format not in ("text", "json"):
            raise UsageError(f"Unknown format '{self.output_format}'; expected text or json")
        if self.models is not None and not [m for m in self.models if m.strip()]:
            raise UsageError("Model filter is empty")
        for label, weight in (self.model_prior or {}).items():
            if not weight > 0:
                raise UsageError(f"Model-prior weight for '{label}' must be > 0, got {weight}")

    def __post_init__(self) -> None:
        self.validate()

    def payload(self) -> Dict[str, Any]:
        return {
            "table": self.table_path,
            "prior": {
                "kind": self.prior.kind,
                "imaginary": self.prior.imaginary_path,
                "weight": self.prior.weight,
                "alpha0": self.prior.alpha0,
            },
            "models": self.models,
            "sampler": {
                "draws": self.sampler.draws,
                "seed": self.sampler.seed,
                "quantiles": list(self.sampler.quantile_levels),
                "workers": self.sampler.workers,
            },
            "output": {"format": self.output_format, "path": self.output_path},
            "model_prior": self.model_prior,
        }

    @property
    def config_hash(self) -> str:
        payload = self.payload()
        # worker count and destination never change the numbers
        payload["sampler"].pop("workers")
        payload.pop("output")
        encoded = json.dumps(payload, sort_keys=True)
        return hashlib.sha256(encoded.encode()).hexdigest()[:16]

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> AnalysisConfig:
        data = dict(data or {})
        prior = data.pop("prior", None) or {}
        if isinstance(prior, str):
            prior = {"kind": prior}
        sampler = data.pop("sampler", None) or {}
        output = data.pop("output", None) or {}
        unknown = set(data) - {"table", "models", "model_prior"}
        if unknown:
            raise UsageError(f"Unknown config keys: {', '.join(sorted(unknown))}")
        quantiles = sampler.get("quantiles")
        return cls(
            table_path=data.get("table"),
            prior=PriorConfig(
                kind=prior.get("kind", "perks_uip"),
                imaginary_path=prior.get("imaginary"),
                weight=prior.get("weight"),
                alpha0=float(prior.get("alpha0", 0.0) or 0.0),
            ),
            models=data.get("models"),
            sampler=SamplerConfig(
                draws=int(sampler.get("draws", SamplerConfig.draws)),
                seed=int(sampler.get("seed", SamplerConfig.seed)),
                quantile_levels=tuple(quantiles) if quantiles else SamplerConfig().quantile_levels,
                workers=int(sampler.get("workers", SamplerConfig.workers)),
            ),
            output_format=output.get("format", "text"),
            output_path=output.get("path"),
            model_prior=data.get("model_prior"),
        )

    @classmethod
    def from_yaml(cls, path: str | Path) -> AnalysisConfig:
        with open(path) as f:
            data = yaml.safe_load(f)
        return cls.from_dict(data)

    def to_yaml(self, path: str | Path) -> None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            yaml.dump(self.payload(), f, default_flow_style=False, sort_keys=False)


def parse_model_prior(spec: str) -> Dict[str, float]:
    """Build a model-prior weight map from a ``label=value`` spec string.

    ``"SC+A=2,ASC=1"`` -> {"SC+A": 2.0, "ASC": 1.0}. Labels are resolved against
    the candidate models later; unlisted models keep weight 1.
    """
    weights: Dict[str, float] = {}
    for pair in spec.split(","):
        pair = pair.strip()
        if not pair:
            continue
        if "=" not in pair:
            raise UsageError(f"Malformed model-prior entry '{pair}'; expected label=value")
        label, raw = (part.strip() for part in pair.rsplit("=", 1))
        if not label:
            raise UsageError(f"Malformed model-prior entry '{pair}'; label is empty")
        try:
            value = float(raw)
        except ValueError as exc:
            raise UsageError(f"Model-prior weight for '{label}' is not a number: '{raw}'") from exc
        if not value > 0:
            raise UsageError(f"Model-prior weight for '{label}' must be > 0, got {value}")
        weights[label] = value
    return weights
