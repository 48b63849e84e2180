"""Sweep and table records produced by the flux, lifetime and scaling computations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple

import numpy as np

from world.errors import ValidationError

POPULATION_MODES = ("equal", "overlap")


@dataclass(frozen=True)
class PopulationModel:
    mode: str = "equal"
    band_height_h: float | None = None

    def __post_init__(self) -> None:
        if self.mode not in POPULATION_MODES:
            raise ValidationError("mode", f"expected one of {POPULATION_MODES}, got {self.mode!r}")
        if self.mode == "overlap":
            h = self.band_height_h
            if h is None or not math.isfinite(h) or h <= 0:
                raise ValidationError("band_height_h", "overlap mode needs a positive band height")


class FluxPoint(NamedTuple):
    velocity: float
    flux: float
    contributions: Dict[int, float]
    state_count: int


@dataclass
class FluxCurve:
    """Deflected flux on a velocity grid, relative to the roughness-free flux F0 at ``reference_velocity``.

    ``per_state`` holds the unnormalised survival contribution (v/R)*exp(-Gamma*t/hbar)
    of each state per unit weight; failed points carry NaN and a status message.
    """

    velocity_grid: List[float]
    relative_flux: List[float]
    reference_velocity: float
    reference_flux: float
    per_state: Dict[int, List[float]] = field(default_factory=dict)
    absolute_flux: List[float] = field(default_factory=list)
    state_counts: List[int] = field(default_factory=list)
    status: List[str] = field(default_factory=list)

    @property
    def failures(self) -> Dict[float, str]:
        return {v: s for v, s in zip(self.velocity_grid, self.status) if s != "ok"}

    def value_at(self, velocity: float) -> float:
        return float(np.interp(velocity, self.velocity_grid, self.relative_flux))


class LifetimeRow(NamedTuple):
    velocity: float
    index_n: int
    lifetime_tau: float
    flight_time: float
    exists: bool
    status: str = "ok"
    passage_time: float = math.nan  # classical fall time from the state's turning height


class ScalingRow(NamedTuple):
    fermi_potential_neV: float
    critical_velocity: float
    final_energy: float
    ionization_rate: float


@dataclass(frozen=True)
class ScalingReport:
    rows: List[ScalingRow]
    slope: float
    intercept: float
    analytic_exponent: float
    decomposition: Dict[str, float]
    ef_model: str
