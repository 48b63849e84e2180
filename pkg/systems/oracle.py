"""Brute-force shooting check of the Airy-based resonance solver.

Integrates chi'' = (z0*Theta(zeta) - zeta - lambda) * chi directly, with a
decaying start deep inside the well and an outgoing WKB start far beyond the
barrier, and locates complex eigenvalues by a secant search.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Dict, NamedTuple, Tuple

import numpy as np

from config import tuning
from systems.resonance import appearance_lambda, semiclassical_condition_root
from world.errors import ConvergenceError, ValidationError

_EYE = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class ShootingGrid:
    """Integration window in units of l0; ``match_at`` is where the branches meet."""

    z_min: float
    z_max: float
    step: float = tuning.SHOOTING_STEP
    match_at: float = 0.0

    def __post_init__(self) -> None:
        if not self.z_min < 0:
            raise ValidationError("z_min", f"must be negative, got {self.z_min!r}")
        if not 0 < self.step <= tuning.SHOOTING_MAX_STEP:
            raise ValidationError("step", f"must lie in (0, {tuning.SHOOTING_MAX_STEP:g}], got {self.step!r}")
        if not 0 <= self.match_at < self.z_max:
            raise ValidationError("match_at", "must lie in [0, z_max)")

    @classmethod
    def for_barrier(cls, z0: float, lam_max: float, step: float = tuning.SHOOTING_STEP) -> ShootingGrid:
        depth = lam_max + 3.0 * math.sqrt(lam_max) + tuning.SHOOTING_INTERIOR_MARGIN
        return cls(z_min=-depth, z_max=z0 + tuning.SHOOTING_EXTERIOR_REACH, step=step)

    def check(self, z0: float, lam: complex) -> None:
        if self.z_max < z0 + tuning.SHOOTING_MIN_EXTERIOR_REACH:
            raise ValidationError("z_max", f"must reach at least z0 + {tuning.SHOOTING_MIN_EXTERIOR_REACH:g}")
        if self.match_at >= z0:
            raise ValidationError("match_at", "must lie below the barrier top")
        depth = max(lam.real, 0.0)
        if self.z_min > -(depth + 3.0 * math.sqrt(depth)):
            raise ValidationError("z_min", f"too shallow for Re(lambda)={lam.real:.6g}")


class OracleResult(NamedTuple):
    roots: Dict[int, complex]
    failures: Dict[int, str]


def _field(q: np.ndarray) -> np.ndarray:
    matrices = np.zeros((q.size, 2, 2), dtype=complex)
    matrices[:, 0, 1] = 1.0
    matrices[:, 1, 0] = q
    return matrices


def _chain(matrices: np.ndarray) -> np.ndarray:
    """Ordered product M[-1] @ ... @ M[0], rescaled level by level."""
    while len(matrices) > 1:
        if len(matrices) % 2:
            matrices = np.concatenate([matrices, _EYE[None]])
        matrices = matrices[1::2] @ matrices[0::2]
        scale = np.abs(matrices).max(axis=(1, 2), keepdims=True)
        matrices = np.where(scale > tuning.SHOOTING_RENORM, matrices / scale, matrices)
    return matrices[0]


def _propagator(start: float, stop: float, offset: complex, step: float) -> np.ndarray:
    """RK4 transfer matrix of (chi, chi') for chi'' = (offset - zeta) * chi from start to stop."""
    count = max(1, int(math.ceil(abs(stop - start) / step)))
    h = (stop - start) / count
    zeta = start + h * np.arange(count)
    k1 = _field(offset - zeta)
    a2 = _field(offset - (zeta + 0.5 * h))
    k2 = a2 @ (_EYE + 0.5 * h * k1)
    k3 = a2 @ (_EYE + 0.5 * h * k2)
    k4 = _field(offset - (zeta + h)) @ (_EYE + h * k3)
    return _chain(_EYE + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4))


def shoot_branches(lam: complex, z0: float, grid: ShootingGrid) -> Tuple[np.ndarray, np.ndarray]:
    """(chi, chi') of the interior and exterior branches at the matching point."""
    lam = complex(lam)
    if not z0 > 0:
        raise ValidationError("z0", f"must be positive, got {z0!r}")
    grid.check(z0, lam)

    kappa = cmath.sqrt(-grid.z_min - lam)
    inner = np.array([1.0, kappa + 1.0 / (4.0 * kappa**2)], dtype=complex)
    inner = _propagator(grid.z_min, 0.0, -lam, grid.step) @ inner
    if grid.match_at > 0:
        inner = _propagator(0.0, grid.match_at, z0 - lam, grid.step) @ inner

    k = cmath.sqrt(grid.z_max - z0 + lam)
    outer = np.array([1.0, 1j * k - 1.0 / (4.0 * k**2)], dtype=complex)
    outer = _propagator(grid.z_max, grid.match_at, z0 - lam, grid.step) @ outer
    return inner, outer


def shoot_mismatch(lam: complex, z0: float, grid: ShootingGrid) -> complex:
    """Wronskian of the two branches divided by the product of their (chi, chi') norms."""
    inner, outer = shoot_branches(lam, z0, grid)
    wronskian = inner[0] * outer[1] - inner[1] * outer[0]
    return complex(wronskian / (np.linalg.norm(inner) * np.linalg.norm(outer)))


def _log_derivative_gap(lam: complex, z0: float, grid: ShootingGrid) -> complex:
    inner, outer = shoot_branches(lam, z0, grid)
    return complex(inner[1] / inner[0] - outer[1] / outer[0])


def _secant(index: int, seed: complex, z0: float, grid: ShootingGrid) -> complex:
    x0, x1 = seed, seed + tuning.SECANT_FIRST_STEP
    f0, f1 = _log_derivative_gap(x0, z0, grid), _log_derivative_gap(x1, z0, grid)
    for iteration in range(1, tuning.SECANT_MAX_ITER + 1):
        if f1 == f0:
            raise ConvergenceError(index, x1, "secant slope vanished")
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        x0, f0 = x1, f1
        x1, f1 = x2, _log_derivative_gap(x2, z0, grid)
        logging.debug("oracle n=%d iteration %d: lambda=%r", index, iteration, x1)
        if abs(x1 - x0) < tuning.SECANT_TOL * max(1.0, abs(x1)):
            return x1
    raise ConvergenceError(index, x1, f"no convergence after {tuning.SECANT_MAX_ITER} secant steps")


def oracle_resonances(
    z0: float,
    n_max: int,
    grid: ShootingGrid | None = None,
    step: float = tuning.SHOOTING_STEP,
) -> OracleResult:
    """Shooting eigenvalues below the barrier top, keyed by state index."""
    if n_max < 1:
        raise ValidationError("n_max", f"must be >= 1, got {n_max}")
    if grid is None:
        grid = ShootingGrid.for_barrier(z0, min(z0, appearance_lambda(n_max + 1)), step)
    roots: Dict[int, complex] = {}
    failures: Dict[int, str] = {}
    for n in range(1, n_max + 1):
        if not z0 > appearance_lambda(n):
            break
        try:
            lam = _secant(n, semiclassical_condition_root(n, z0), z0, grid)
        except ConvergenceError as exc:
            logging.warning("oracle failed for n=%d at z0=%.6g: %s", n, z0, exc)
            failures[n] = str(exc)
            continue
        if lam.real >= z0:
            break
        roots[n] = lam
    return OracleResult(roots, failures)
