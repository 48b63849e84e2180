"""Step detection and step contrast on flux curves."""

from __future__ import annotations

from typing import List, NamedTuple

import numpy as np

from entities.curves import FluxCurve
from world.errors import ValidationError


class Step(NamedTuple):
    velocity: float
    slope: float


def detect_steps(curve: FluxCurve, min_fraction: float = 0.1) -> List[Step]:
    """Local maxima of |dF/dv| above ``min_fraction`` of the largest one, steepest first."""
    v = np.asarray(curve.velocity_grid, dtype=float)
    flux = np.asarray(curve.relative_flux, dtype=float)
    usable = np.isfinite(flux)
    v, flux = v[usable], flux[usable]
    if v.size < 3:
        return []
    slope = np.abs(np.gradient(flux, v))
    peak = slope.max()
    if peak == 0:
        return []
    steps = []
    for i in range(1, v.size - 1):
        if slope[i] >= slope[i - 1] and slope[i] > slope[i + 1] and slope[i] >= min_fraction * peak:
            steps.append(Step(float(v[i]), float(slope[i])))
    return sorted(steps, key=lambda step: step.slope, reverse=True)


def step_contrast(
    curve: FluxCurve,
    step_velocity: float,
    half_window: float,
    reference_curve: FluxCurve | None = None,
) -> float:
    """Flux drop across a step divided by the pre-step flux of ``reference_curve`` (default: the curve itself).

    The flux falls with velocity, so "pre-step" is the low-velocity side.
    """
    if not half_window > 0:
        raise ValidationError("half_window", f"must be positive, got {half_window!r}")
    before = curve.value_at(step_velocity - half_window)
    after = curve.value_at(step_velocity + half_window)
    base = (reference_curve or curve).value_at(step_velocity - half_window)
    if not base > 0:
        raise ValidationError("step_velocity", "no flux before the step")
    return (before - after) / base
