"""Characteristic length, energy and dimensionless scales of the centrifugal well."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from config import constants
from world.errors import ValidationError
from world.mirror import CODATA, BeamSpec, MirrorSpec, PhysicalConstants, require_positive


@dataclass(frozen=True)
class ScaleSet:
    """Scales for one (velocity, mirror) pair; SI units throughout."""

    l0: float
    eps0: float
    z0: float
    mu0: float
    accel_a: float
    energy_E: float
    velocity: float
    radius: float
    fermi_potential: float
    consts: PhysicalConstants = CODATA

    @property
    def eps0_neV(self) -> float:
        return self.eps0 / self.consts.nev_to_joule

    @property
    def l0_um(self) -> float:
        return self.l0 / constants.UM

    def to_neV(self, energy: float) -> float:
        return energy / self.consts.nev_to_joule


def make_scales(beam: BeamSpec, mirror: MirrorSpec, consts: PhysicalConstants = CODATA) -> ScaleSet:
    v = beam.velocity_v
    R = mirror.radius_R
    require_positive("velocity_v", v)
    require_positive("radius_R", R)
    require_positive("fermi_potential_U0", mirror.fermi_potential_U0)
    M = consts.neutron_mass
    hbar = consts.hbar

    l0 = float(np.cbrt(hbar**2 * R / (2 * M**2 * v**2)))
    eps0 = float(np.cbrt(hbar**2 * M * v**4 / (2 * R**2)))
    U0 = mirror.fermi_potential_joule(consts)
    return ScaleSet(
        l0=l0,
        eps0=eps0,
        z0=U0 / eps0,
        mu0=M * v * R / hbar,
        accel_a=v**2 / R,
        energy_E=M * v**2 / 2,
        velocity=v,
        radius=R,
        fermi_potential=U0,
        consts=consts,
    )


def scales_at(velocity: float, mirror: MirrorSpec, consts: PhysicalConstants = CODATA) -> ScaleSet:
    return make_scales(BeamSpec(velocity), mirror, consts)


def classical_angular_momentum(beam: BeamSpec, mirror: MirrorSpec, consts: PhysicalConstants = CODATA) -> float:
    return consts.neutron_mass * beam.velocity_v * mirror.radius_R / consts.hbar


def classical_passage_time(mirror: MirrorSpec, velocity: float, band_height_h: float) -> float:
    """Time a classical neutron entering at height h needs to reach the mirror surface."""
    require_positive("velocity_v", velocity)
    if not math.isfinite(band_height_h) or band_height_h <= 0:
        raise ValidationError("band_height_h", f"must be positive, got {band_height_h!r}")
    return math.sqrt(2 * band_height_h * mirror.radius_R / velocity**2)


def flight_time(mirror: MirrorSpec, velocity: float) -> float:
    require_positive("velocity_v", velocity)
    return mirror.length_L / velocity
