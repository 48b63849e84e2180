"""Quasi-stationary state records."""

from __future__ import annotations

import math
from dataclasses import dataclass

from world.scales import ScaleSet


@dataclass(frozen=True)
class Resonance:
    """One quasi-stationary state.

    ``eigenvalue`` is the dimensionless complex lambda_n, ``energy_eps`` is
    eps0 * lambda_n in joules. The width and lifetime follow from
    eps = E_r - i*Gamma/2; a width that underflows to zero gives an infinite
    lifetime.
    """

    index_n: int
    eigenvalue: complex
    energy_eps: complex
    width_gamma: float
    lifetime_tau: float
    ang_momentum_mu: complex
    scales: ScaleSet
    residual: float = 0.0
    ionization_width: float = 0.0

    @classmethod
    def from_eigenvalue(cls, index_n: int, eigenvalue: complex, scales: ScaleSet, residual: float = 0.0) -> Resonance:
        consts = scales.consts
        energy = scales.eps0 * eigenvalue
        width = max(0.0, -2.0 * scales.eps0 * eigenvalue.imag)
        lifetime = consts.hbar / width if width > 0 else math.inf
        mu = scales.mu0 - energy * consts.neutron_mass * scales.radius**2 / (scales.mu0 * consts.hbar**2)
        return cls(
            index_n=index_n,
            eigenvalue=eigenvalue,
            energy_eps=energy,
            width_gamma=width,
            lifetime_tau=lifetime,
            ang_momentum_mu=mu,
            scales=scales,
            residual=residual,
        )

    @property
    def energy_neV(self) -> complex:
        return self.energy_eps / self.scales.consts.nev_to_joule

    @property
    def width_neV(self) -> float:
        return self.width_gamma / self.scales.consts.nev_to_joule

    def total_width(self, extra: float | None = None) -> float:
        return self.width_gamma + (self.ionization_width if extra is None else extra)


@dataclass(frozen=True)
class SemiclassicalEstimate:
    index_n: int
    lambda_estimate: float
    gamma_estimate: float
    valid: bool
