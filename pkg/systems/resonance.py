"""Complex eigenvalues, widths, lifetimes and critical velocities of the centrifugal states."""

from __future__ import annotations

import cmath
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, List, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from config import tuning
from entities.curves import LifetimeRow
from entities.resonance import Resonance, SemiclassicalEstimate
from systems.airy import ScaledAiryQuad, airy_eval_scaled, scaled_real_arrays
from world.errors import (
    AiryDomainError,
    CentrifugalError,
    ConvergenceError,
    RootCollisionError,
    ValidationError,
)
from world.mirror import CODATA, MirrorSpec, PhysicalConstants
from world.scales import ScaleSet, classical_passage_time, flight_time, scales_at


def _outgoing(quad: ScaledAiryQuad) -> Tuple[complex, complex]:
    """Bi + i*Ai and its derivative, with the common factor exp(max exponent) dropped."""
    top = max(quad.ai_exponent, quad.bi_exponent)
    ai_factor = math.exp(quad.ai_exponent - top)
    bi_factor = math.exp(quad.bi_exponent - top)
    value = quad.bi * bi_factor + 1j * quad.ai * ai_factor
    slope = quad.bi_prime * bi_factor + 1j * quad.ai_prime * ai_factor
    return value, slope


def _matching_terms(lam: complex, z0: float) -> Tuple[complex, complex, complex]:
    """Both sides of the matching condition and the derivative of their difference.

    All three share the dropped scale factors, so only ratios are meaningful.
    """
    inner = airy_eval_scaled(-lam)
    outer_value, outer_slope = _outgoing(airy_eval_scaled(z0 - lam))
    left = inner.ai_prime * outer_value
    right = inner.ai * outer_slope
    # d/dlambda (left - right) = z0 * Ai(-lambda) * E(z0 - lambda) via Ai'' = x Ai
    return left, right, z0 * inner.ai * outer_value


def _normalized(left: complex, right: complex) -> complex:
    scale = max(abs(left), abs(right))
    if scale == 0:
        return 0j
    return (left - right) / scale


def matching_residual(lam: complex, z0: float) -> complex:
    if not z0 > 0:
        raise ValidationError("z0", f"must be positive, got {z0!r}")
    left, right, _ = _matching_terms(complex(lam), z0)
    return _normalized(left, right)


def appearance_lambda(n: int) -> float:
    return (1.5 * math.pi * (n - 0.75)) ** (2.0 / 3.0)


def semiclassical_lambda(n: int, z0: float, eps0: float = 1.0) -> SemiclassicalEstimate:
    """Semiclassical eigenvalue and width; the width is in units of ``eps0``."""
    if n < 1:
        raise ValidationError("index_n", f"must be >= 1, got {n}")
    lead = (0.75 * math.pi * (2 * n - 0.5)) ** (2.0 / 3.0)
    if not z0 > lead:
        return SemiclassicalEstimate(n, lead, math.nan, False)
    estimate = lead - math.sqrt(lead / (z0 - lead))
    if estimate <= 0:
        return SemiclassicalEstimate(n, estimate, math.nan, False)
    barrier = z0 - estimate
    if math.isinf(barrier):
        return SemiclassicalEstimate(n, estimate, 0.0, True)
    gamma = 4.0 * eps0 * math.sqrt(barrier) / z0 * math.exp(-4.0 / 3.0 * barrier**1.5)
    return SemiclassicalEstimate(n, estimate, gamma, True)


def semiclassical_condition_root(n: int, z0: float) -> complex:
    """Complex root of the uniform semiclassical quantization condition.

    Solves sqrt(l/(z0-l)) * tan(2/3 l^(3/2) - pi/4) = 1 - 2i exp(-4/3 (z0-l)^(3/2))
    starting from the root of its real part.
    """
    if n < 1:
        raise ValidationError("index_n", f"must be >= 1, got {n}")
    if not z0 > appearance_lambda(n):
        raise ValidationError("z0", f"state n={n} does not exist below the barrier top z0={z0:.6g}")

    def phase_gap(lam: float) -> float:
        return 2.0 / 3.0 * lam**1.5 - math.pi / 4 - (n - 1) * math.pi - math.atan(math.sqrt((z0 - lam) / lam))

    lam = complex(brentq(phase_gap, 1e-12, z0, xtol=1e-15, rtol=4 * np.finfo(float).eps))

    def condition(x: complex) -> Tuple[complex, complex]:
        barrier = z0 - x
        ratio = cmath.sqrt(x / barrier)
        tangent = cmath.tan(2.0 / 3.0 * x**1.5 - math.pi / 4)
        leak = cmath.exp(-4.0 / 3.0 * barrier**1.5)
        value = ratio * tangent - (1 - 2j * leak)
        slope = (
            ratio * z0 / (2 * x * barrier) * tangent
            + ratio * (1 + tangent**2) * cmath.sqrt(x)
            + 4j * leak * cmath.sqrt(barrier)
        )
        return value, slope

    for _ in range(tuning.NEWTON_MAX_ITER):
        value, slope = condition(lam)
        step = -value / slope
        lam += step
        imag_tol = max(min(tuning.NEWTON_STEP_TOL, tuning.NEWTON_IMAG_REL_TOL * abs(lam.imag)), 1e-300)
        if abs(step.real) < 1e-14 * abs(lam.real) and abs(step.imag) <= imag_tol:
            return lam
    raise ConvergenceError(n, lam, "semiclassical condition did not converge")


def critical_velocity_semiclassical(n: int, mirror: MirrorSpec, consts: PhysicalConstants = CODATA) -> float:
    """Velocity at which the n-th state appears at the barrier top."""
    if n < 1:
        raise ValidationError("index_n", f"must be >= 1, got {n}")
    U0 = mirror.fermi_potential_joule(consts)
    quantum = (1.5 * math.pi * (n - 0.75)) ** 2
    return (U0**3 / quantum * 2 * mirror.radius_R**2 / (consts.hbar**2 * consts.neutron_mass)) ** 0.25


def count_real_brackets(z0: float, upper: float | None = None) -> List[Tuple[float, float]]:
    """Intervals of (0, min(z0, upper)) where the real-axis matching function changes sign."""
    if not z0 > 0:
        raise ValidationError("z0", f"must be positive, got {z0!r}")
    stop = z0 if upper is None else min(z0, upper)
    points = max(64, int(math.ceil(stop * tuning.BRACKET_POINTS_PER_UNIT)))
    grid = np.linspace(stop / points, stop, points)
    ai, ai_prime, _, _, _ = scaled_real_arrays(-grid)
    _, _, bi, bi_prime, _ = scaled_real_arrays(z0 - grid)
    gap = ai_prime * bi - ai * bi_prime
    change = np.nonzero(gap[:-1] * gap[1:] < 0)[0]
    return [(float(grid[i]), float(grid[i + 1])) for i in change]


def _real_matching(lam: float, z0: float) -> float:
    inner = airy_eval_scaled(-lam)
    outer = airy_eval_scaled(z0 - lam)
    return (inner.ai_prime * outer.bi - inner.ai * outer.bi_prime).real


def _imag_seed(re_seed: float, z0: float) -> float:
    barrier = z0 - re_seed
    if barrier <= 0:
        return tuning.FALLBACK_IMAG_SEED
    return -2.0 * math.sqrt(barrier) / z0 * math.exp(-4.0 / 3.0 * barrier**1.5)


def _newton(index: int, seed: complex, z0: float) -> complex:
    lam = seed
    left, right, slope = _matching_terms(lam, z0)
    norm = abs(_normalized(left, right))
    for iteration in range(1, tuning.NEWTON_MAX_ITER + 1):
        if slope == 0:
            raise ConvergenceError(index, lam, "matching derivative vanished")
        step = -(left - right) / slope
        damping = 1.0
        for _ in range(tuning.NEWTON_MAX_HALVINGS):
            candidate = lam + damping * step
            try:
                terms = _matching_terms(candidate, z0)
            except AiryDomainError:
                damping *= 0.5
                continue
            candidate_norm = abs(_normalized(terms[0], terms[1]))
            if candidate_norm <= norm or candidate_norm < tuning.NEWTON_RESIDUAL_TOL:
                break
            damping *= 0.5
        else:
            raise ConvergenceError(index, lam, "damped step could not reduce the residual")
        applied = damping * step
        lam = candidate
        left, right, slope = terms
        norm = candidate_norm
        logging.debug("n=%d iteration %d: lambda=%r residual=%.3e damping=%g", index, iteration, lam, norm, damping)
        imag_tol = max(min(tuning.NEWTON_STEP_TOL, tuning.NEWTON_IMAG_REL_TOL * abs(lam.imag)), 1e-300)
        if norm < tuning.NEWTON_RESIDUAL_TOL and abs(applied.real) < tuning.NEWTON_STEP_TOL and abs(applied.imag) <= imag_tol:
            return lam
    raise ConvergenceError(index, lam, f"no convergence after {tuning.NEWTON_MAX_ITER} iterations")


def _owning_bracket(re_lambda: float, centres: Sequence[float]) -> int:
    return int(np.argmin([abs(re_lambda - c) for c in centres]))


def _seeds(index: int, z0: float, bracket: Tuple[float, float]) -> Iterator[float]:
    estimate = semiclassical_lambda(index, z0)
    if estimate.valid:
        yield estimate.lambda_estimate
    yield brentq(_real_matching, bracket[0], bracket[1], args=(z0,), xtol=1e-14)


def _solve_state(index: int, z0: float, brackets: Sequence[Tuple[float, float]]) -> complex:
    centres = [0.5 * (lo + hi) for lo, hi in brackets]
    last: complex | None = None
    for re_seed in _seeds(index, z0, brackets[index - 1]):
        seed = complex(re_seed, _imag_seed(re_seed, z0))
        try:
            lam = _newton(index, seed, z0)
        except ConvergenceError as exc:
            logging.debug("seed %r for n=%d failed: %s", seed, index, exc)
            last = exc.last_iterate
            continue
        if _owning_bracket(lam.real, centres) == index - 1:
            return lam
        logging.debug("seed %r for n=%d converged to a neighbouring state %r", seed, index, lam)
        last = lam
    raise ConvergenceError(index, last if last is not None else complex("nan"), "no seed converged to this state")


def solve_resonances(scales: ScaleSet, n_max: int = tuning.DEFAULT_N_MAX) -> List[Resonance]:
    """All states below the barrier top, at most ``n_max``, ordered by Re(lambda)."""
    if n_max < 1:
        raise ValidationError("n_max", f"must be >= 1, got {n_max}")
    z0 = scales.z0
    upper = appearance_lambda(n_max + 1) + tuning.BRACKET_MARGIN
    brackets = count_real_brackets(z0, upper)
    states: List[Resonance] = []
    for index in range(1, min(n_max, len(brackets)) + 1):
        lam = _solve_state(index, z0, brackets)
        if lam.real >= z0:
            logging.debug("n=%d lies above the barrier top (Re lambda=%.6g >= z0=%.6g)", index, lam.real, z0)
            break
        residual = abs(matching_residual(lam, z0))
        states.append(Resonance.from_eigenvalue(index, lam, scales, residual))
    for i, first in enumerate(states):
        for second in states[i + 1 :]:
            if abs(first.eigenvalue - second.eigenvalue) <= tuning.ROOT_DISTINCT_TOL:
                raise RootCollisionError(
                    f"states n={first.index_n} and n={second.index_n} collapsed onto lambda={first.eigenvalue!r}"
                )
    return states


def _lifetime_rows(mirror: MirrorSpec, velocity: float, n_states: int, consts: PhysicalConstants) -> List[LifetimeRow]:
    t_flight = flight_time(mirror, velocity)
    try:
        states = solve_resonances(scales_at(velocity, mirror, consts), n_states)
    except CentrifugalError as exc:
        logging.warning("lifetimes at v=%.6g m/s failed: %s", velocity, exc)
        return [LifetimeRow(velocity, n, math.nan, t_flight, False, f"error: {exc}") for n in range(1, n_states + 1)]
    by_index = {state.index_n: state for state in states}
    rows = []
    for n in range(1, n_states + 1):
        state = by_index.get(n)
        if state is None:
            rows.append(LifetimeRow(velocity, n, math.nan, t_flight, False))
        else:
            turning_height = state.eigenvalue.real * state.scales.l0
            passage = classical_passage_time(mirror, velocity, turning_height)
            rows.append(LifetimeRow(velocity, n, state.lifetime_tau, t_flight, True, passage_time=passage))
    return rows


def lifetime_curve(
    mirror: MirrorSpec,
    v_grid: Sequence[float],
    n_states: int,
    consts: PhysicalConstants = CODATA,
    threads: int = 1,
) -> List[LifetimeRow]:
    """Lifetimes of the lowest states against the flight time on a velocity grid."""
    grid = [float(v) for v in v_grid]
    if not grid or any(v <= 0 for v in grid):
        raise ValidationError("v_grid", "velocities must be positive")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValidationError("v_grid", "velocities must be sorted ascending")
    if n_states < 1:
        raise ValidationError("n_states", f"must be >= 1, got {n_states}")
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        blocks = list(pool.map(lambda v: _lifetime_rows(mirror, v, n_states, consts), grid))
    return [row for block in blocks for row in block]


def _log_lifetime_gap(velocity: float, mirror: MirrorSpec, n: int, consts: PhysicalConstants) -> float:
    states = solve_resonances(scales_at(velocity, mirror, consts), n)
    if len(states) < n:
        return tuning.LOG_TAU_FLOOR
    tau = states[n - 1].lifetime_tau
    if math.isinf(tau):
        return -tuning.LOG_TAU_FLOOR
    gap = math.log(tau / flight_time(mirror, velocity))
    return min(max(gap, tuning.LOG_TAU_FLOOR), -tuning.LOG_TAU_FLOOR)


def flight_crossing_velocity(
    mirror: MirrorSpec,
    n: int,
    v_lo: float,
    v_hi: float,
    consts: PhysicalConstants = CODATA,
    samples: int = 40,
) -> float:
    """Velocity at which the lifetime of state n drops below the flight time L/v."""
    if not 0 < v_lo < v_hi:
        raise ValidationError("v_lo", "need 0 < v_lo < v_hi")
    grid = np.linspace(v_lo, v_hi, samples)
    gaps = [_log_lifetime_gap(v, mirror, n, consts) for v in grid]
    for i in range(len(grid) - 1):
        if gaps[i] >= 0 > gaps[i + 1]:
            return float(
                brentq(_log_lifetime_gap, grid[i], grid[i + 1], args=(mirror, n, consts), xtol=1e-6 * grid[i])
            )
    raise ConvergenceError(n, complex("nan"), f"lifetime does not cross the flight time in [{v_lo:g}, {v_hi:g}] m/s")
