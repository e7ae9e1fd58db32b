"""
Pytest configuration and shared fixtures.
"""

from pathlib import Path

import numpy as np
import pytest

from src.data.tables import load_table
from src.graph.models import enumerate_models
from src.priors.dirichlet import PriorSpec, make_prior
from src.table.contingency import ContingencyTable, Variable

SAMPLE_DIR = Path(__file__).resolve().parents[1] / "data" / "processed" / "sample"


@pytest.fixture
def sample_dir() -> Path:
    return SAMPLE_DIR


@pytest.fixture
def antitoxin() -> ContingencyTable:
    """Antitoxin (A) x Survival (S) x Condition (C), N = 79."""
    return load_table(SAMPLE_DIR / "antitoxin.yaml")


@pytest.fixture
def alcohol() -> ContingencyTable:
    """High blood pressure (H) x Alcohol (A) x Obesity (O), N = 491."""
    return load_table(SAMPLE_DIR / "alcohol.yaml")


@pytest.fixture
def antitoxin_models(antitoxin):
    return enumerate_models(antitoxin.names)


@pytest.fixture
def perks(antitoxin):
    return make_prior(PriorSpec(kind="perks_uip"), antitoxin)


def binary_table(counts, names=("A", "B", "C"), name=None) -> ContingencyTable:
    """All-binary table over ``names`` with ``counts`` in vec order."""
    variables = tuple(Variable(n, ("1", "2")) for n in names)
    return ContingencyTable(variables, np.asarray(counts, dtype=float), name)
