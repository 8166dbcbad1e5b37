"""Seeded synthetic enterprise generator.

Produces event matrices shaped like a round-timber plant with three business
processes (logging, river delivery, round-wood production) and random binary
competency maps, so the full pipeline runs at desk scale.

Determinism contract: all randomness comes from numpy's PCG64 generator seeded
from the config, so identical configs yield bit-identical output on any
platform.  The 12-period seasonal shape (deliveries peak in the river
navigation season) is invented domain color, not a measured profile.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidConfig
from .model import (
    ChannelLabel,
    Competency,
    CompetencyMap,
    EventMatrix,
    Taxonomy,
    default_taxonomy,
    validate_event_matrix,
)

# fixed 12-period seasonal profile, index (t-1) % 12
SEASONAL_SHAPE = (
    -0.8, -0.9, -0.6, -0.1, 0.5, 0.9, 1.0, 0.8, 0.4, -0.1, -0.5, -0.7
)


@dataclass(frozen=True)
class ProcessSpec:
    name: str
    channel_count: int
    base_level: float            # thousand rubles per period
    seasonal_amplitude: float = 0.0
    noise_level: float = 0.0

    def __post_init__(self):
        if self.channel_count < 1:
            raise InvalidConfig(f"process {self.name!r}: channel_count must be >= 1")
        if self.seasonal_amplitude < 0 or self.noise_level < 0:
            raise InvalidConfig(f"process {self.name!r}: amplitudes must be >= 0")


def default_processes() -> tuple[ProcessSpec, ...]:
    return (
        ProcessSpec("logging", 4, 2500.0, 0.35, 120.0),
        ProcessSpec("river delivery", 3, 1800.0, 0.60, 90.0),
        ProcessSpec("round-wood production", 5, 3200.0, 0.20, 150.0),
    )


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    periods: int = 57
    processes: tuple[ProcessSpec, ...] = field(default_factory=default_processes)
    map_density: float = 0.35
    competency_count: int = 12

    def __post_init__(self):
        if self.periods < 1:
            raise InvalidConfig(f"periods must be >= 1, got {self.periods}")
        if not self.processes:
            raise InvalidConfig("at least one process required")
        if not 0.0 <= self.map_density <= 1.0:
            raise InvalidConfig(f"map_density must be in [0, 1], got {self.map_density}")
        if self.competency_count < 1:
            raise InvalidConfig("competency_count must be >= 1")

    @property
    def n_channels(self) -> int:
        return sum(p.channel_count for p in self.processes)


def generate_enterprise(config: GeneratorConfig) -> EventMatrix:
    """Channel value at t = base * (1 + amplitude * s(t)) + noise.

    Channels are tagged by process in declaration order; same config (seed
    included) yields bit-identical output.
    """
    rng = np.random.Generator(np.random.PCG64(config.seed))
    t = np.arange(1, config.periods + 1)
    season = np.asarray(SEASONAL_SHAPE)[(t - 1) % 12]
    cols, labels = [], []
    for proc in config.processes:
        for c in range(proc.channel_count):
            noise = rng.normal(0.0, proc.noise_level, size=config.periods) \
                if proc.noise_level > 0 else np.zeros(config.periods)
            cols.append(proc.base_level * (1.0 + proc.seasonal_amplitude * season) + noise)
            labels.append(ChannelLabel(name=f"{proc.name}/{c + 1}", process=proc.name))
    return validate_event_matrix(np.column_stack(cols), labels)


def generate_competency_map(
    config: GeneratorConfig, n: int, taxonomy: Taxonomy | None = None
) -> CompetencyMap:
    """Random m x n binary mask; each cell is 1 with probability map_density.

    Competencies cycle round-robin over the three taxonomy domains (and over
    levels within each domain).  Drawn from a stream independent of the
    enterprise generator so matrices and maps can be regenerated separately.
    """
    if n < 1:
        raise InvalidConfig(f"channel count must be >= 1, got {n}")
    tax = taxonomy or default_taxonomy()
    rng = np.random.Generator(np.random.PCG64([config.seed, 0x6D61736B]))
    m = config.competency_count
    mask = (rng.random((m, n)) < config.map_density).astype(int)
    comps = []
    level_cursor = {d: 0 for d in tax.domains}
    for i in range(m):
        domain = tax.domains[i % len(tax.domains)]
        levels = tax.levels[domain]
        level = levels[level_cursor[domain] % len(levels)]
        level_cursor[domain] += 1
        comps.append(
            Competency(id=f"c{i + 1:03d}", name=f"competency {i + 1}", domain=domain, level=level)
        )
    return CompetencyMap(competencies=tuple(comps), mask=mask)
