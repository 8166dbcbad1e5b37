from pathlib import Path

import numpy as np
import pytest

from twindex import (
    Competency,
    CompetencyMap,
    GeneratorConfig,
    bind_competencies,
    generate_enterprise,
    validate_event_matrix,
)

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def table1_text() -> str:
    return (DATA_DIR / "table1.csv").read_text()


def make_events(grid, labels=None):
    return validate_event_matrix(np.asarray(grid, dtype=float), labels)


def make_map(mask, reduction_mode="aggregate", costs=None):
    mask = np.asarray(mask, dtype=int)
    m = mask.shape[0]
    costs = costs or [0.0] * m
    comps = tuple(
        Competency(id=f"c{i+1}", name=f"comp {i+1}", domain="cognitive",
                   level="knowledge", activation_cost=costs[i])
        for i in range(m)
    )
    return CompetencyMap(competencies=comps, mask=mask, reduction_mode=reduction_mode)


def random_signal(rng, t_max, p):
    """Random competency signal via a p-channel event matrix and identity mask."""
    events = make_events(rng.normal(50.0, 12.0, size=(t_max, p)))
    return bind_competencies(events, make_map(np.eye(p, dtype=int)))


@pytest.fixture
def small_enterprise():
    config = GeneratorConfig(seed=7, periods=57)
    return config, generate_enterprise(config)
