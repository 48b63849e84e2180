"""Deflected neutron flux as a sum of decaying quasi-stationary contributions."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Sequence

import numpy as np

from config import tuning
from entities.curves import FluxCurve, FluxPoint, PopulationModel
from entities.resonance import Resonance
from systems.airy import airy_ai
from systems.resonance import solve_resonances
from world.errors import CentrifugalError, PartialSweepError, ValidationError
from world.mirror import CODATA, MirrorSpec, PhysicalConstants
from world.scales import flight_time, scales_at

ExtraWidth = Callable[[Resonance], float]

_LEGENDRE = np.polynomial.legendre.leggauss(tuning.OVERLAP_NODES)


def time_of_flight(mirror: MirrorSpec, v: float) -> float:
    return flight_time(mirror, v)


def _gauss(values: Callable[[np.ndarray], np.ndarray], lower: float, upper: float) -> complex:
    nodes, weights = _LEGENDRE
    half = 0.5 * (upper - lower)
    points = lower + half * (nodes + 1.0)
    return half * np.sum(weights * values(points))


def _overlap_weight(state: Resonance, band_height: float) -> float:
    """|integral of chi over the entrance band|^2 over the norm of chi inside the well."""
    lam = state.eigenvalue
    band = _gauss(lambda s: airy_ai(s - lam), 0.0, band_height / state.scales.l0)
    norm = _gauss(lambda s: np.abs(airy_ai(s - lam)) ** 2, 0.0, lam.real)
    return float(abs(band) ** 2 / norm.real)


def initial_populations(resonances: Sequence[Resonance], model: PopulationModel) -> List[float]:
    if not resonances:
        raise ValidationError("resonances", "need at least one state")
    if model.mode == "equal":
        return [1.0] * len(resonances)
    weights = [_overlap_weight(state, model.band_height_h) for state in resonances]
    total = sum(weights)
    if not total > 0:
        raise ValidationError("band_height_h", "overlap weights vanish for every state")
    return [w / total for w in weights]


def flux_breakdown(
    mirror: MirrorSpec,
    v: float,
    model: PopulationModel = PopulationModel(),
    consts: PhysicalConstants = CODATA,
    n_max: int = tuning.DEFAULT_N_MAX,
    extra_width: ExtraWidth | None = None,
) -> FluxPoint:
    """Flux at one velocity with the survival (v/R)*exp(-Gamma*t/hbar) of every state."""
    t_flight = time_of_flight(mirror, v)
    try:
        states = solve_resonances(scales_at(v, mirror, consts), n_max)
    except CentrifugalError as exc:
        exc.add_note(f"while computing the deflected flux at v={v:.6g} m/s")
        raise
    if not states:
        return FluxPoint(v, 0.0, {}, 0)

    weights = initial_populations(states, model)
    prefactor = v / mirror.radius_R
    contributions: Dict[int, float] = {}
    flux = 0.0
    for state, weight in zip(states, weights):
        width = state.total_width(None if extra_width is None else extra_width(state))
        survival = prefactor * math.exp(-width * t_flight / consts.hbar)
        contributions[state.index_n] = survival
        flux += weight * survival
    return FluxPoint(v, flux, contributions, len(states))


def deflected_flux(
    mirror: MirrorSpec,
    v: float,
    model: PopulationModel = PopulationModel(),
    consts: PhysicalConstants = CODATA,
    n_max: int = tuning.DEFAULT_N_MAX,
) -> float:
    return flux_breakdown(mirror, v, model, consts, n_max).flux


def velocity_grid(v_min: float, v_max: float, steps: int, reference_velocity: float) -> List[float]:
    if not 0 < v_min < v_max:
        raise ValidationError("v_min", f"need 0 < v_min < v_max, got {v_min!r}, {v_max!r}")
    if steps < 2:
        raise ValidationError("steps", f"must be >= 2, got {steps}")
    if not v_min <= reference_velocity <= v_max:
        raise ValidationError("reference_velocity", "must lie inside the sweep window")
    return [float(v) for v in np.linspace(v_min, v_max, steps)]


def run_sweep(
    mirror: MirrorSpec,
    grid: Sequence[float],
    reference_velocity: float,
    model: PopulationModel,
    consts: PhysicalConstants,
    n_max: int,
    threads: int,
    extra_width: ExtraWidth | None = None,
) -> FluxCurve:
    """Sweep the grid; the curve is normalised to the roughness-free flux at the reference."""
    reference = flux_breakdown(mirror, reference_velocity, model, consts, n_max)
    if not reference.flux > 0:
        raise ValidationError("reference_velocity", f"no deflected flux at {reference_velocity:.6g} m/s")

    def point(v: float):
        try:
            return flux_breakdown(mirror, v, model, consts, n_max, extra_width), "ok"
        except CentrifugalError as exc:
            logging.warning("sweep point v=%.6g m/s failed: %s", v, exc)
            return None, f"error: {exc}"

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        results = list(pool.map(point, grid))

    indices = sorted({n for result, _ in results if result is not None for n in result.contributions})
    curve = FluxCurve(
        velocity_grid=list(grid),
        relative_flux=[r.flux / reference.flux if r is not None else math.nan for r, _ in results],
        reference_velocity=reference_velocity,
        reference_flux=reference.flux,
        per_state={n: [r.contributions.get(n, 0.0) if r is not None else math.nan for r, _ in results] for n in indices},
        absolute_flux=[r.flux if r is not None else math.nan for r, _ in results],
        state_counts=[r.state_count if r is not None else 0 for r, _ in results],
        status=[status for _, status in results],
    )
    failed = len(curve.failures)
    if len(grid) - failed < tuning.SWEEP_MIN_SUCCESS * len(grid):
        raise PartialSweepError(failed, len(grid), curve)
    if failed:
        logging.warning("%d of %d sweep points failed", failed, len(grid))
    return curve


def flux_sweep(
    mirror: MirrorSpec,
    v_min: float,
    v_max: float,
    steps: int,
    reference_velocity: float,
    model: PopulationModel = PopulationModel(),
    consts: PhysicalConstants = CODATA,
    n_max: int = tuning.DEFAULT_N_MAX,
    threads: int = 1,
) -> FluxCurve:
    grid = velocity_grid(v_min, v_max, steps, reference_velocity)
    return run_sweep(mirror, grid, reference_velocity, model, consts, n_max, threads)
