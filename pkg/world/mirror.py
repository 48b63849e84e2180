"""Physical constants and the mirror, beam and roughness descriptions."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import trapezoid

from config import constants
from world.errors import ValidationError


def require_positive(field: str, value: float) -> None:
    if not math.isfinite(value) or value <= 0:
        raise ValidationError(field, f"must be a positive finite number, got {value!r}")


@dataclass(frozen=True)
class PhysicalConstants:
    neutron_mass: float = constants.NEUTRON_MASS
    hbar: float = constants.HBAR
    nev_to_joule: float = constants.NEV_TO_JOULE

    def __post_init__(self) -> None:
        require_positive("neutron_mass", self.neutron_mass)
        require_positive("hbar", self.hbar)
        require_positive("nev_to_joule", self.nev_to_joule)


CODATA = PhysicalConstants()


@dataclass(frozen=True)
class MirrorSpec:
    """Curved mirror: radius and length in metres, Fermi potential in neV."""

    radius_R: float
    length_L: float
    fermi_potential_U0: float
    material_label: str = "custom"

    def __post_init__(self) -> None:
        require_positive("radius_R", self.radius_R)
        require_positive("length_L", self.length_L)
        require_positive("fermi_potential_U0", self.fermi_potential_U0)
        if self.length_L >= 2 * math.pi * self.radius_R:
            raise ValidationError("length_L", "mirror length must be shorter than the full circumference 2*pi*R")

    @classmethod
    def from_units(cls, R_cm: float, L_cm: float, U0_neV: float, label: str = "custom") -> MirrorSpec:
        return cls(R_cm * constants.CM, L_cm * constants.CM, U0_neV, label)

    @classmethod
    def material(cls, name: str) -> MirrorSpec:
        try:
            U0_neV, R_cm, L_cm = constants.MATERIALS[name]
        except KeyError:
            raise ValidationError("material", f"unknown material '{name}'") from None
        return cls.from_units(R_cm, L_cm, U0_neV, name)

    def with_potential(self, U0_neV: float) -> MirrorSpec:
        return replace(self, fermi_potential_U0=U0_neV)

    def fermi_potential_joule(self, consts: PhysicalConstants = CODATA) -> float:
        return self.fermi_potential_U0 * consts.nev_to_joule


@dataclass(frozen=True)
class BeamSpec:
    velocity_v: float

    def __post_init__(self) -> None:
        require_positive("velocity_v", self.velocity_v)


@dataclass(frozen=True)
class RoughnessSpectrum:
    """Tabulated spectral density f(omega) of the squared roughness amplitude (m^2 s)."""

    omega: np.ndarray
    density: np.ndarray

    def __post_init__(self) -> None:
        omega = np.asarray(self.omega, dtype=float)
        density = np.asarray(self.density, dtype=float)
        if omega.ndim != 1 or omega.shape != density.shape or omega.size < 2:
            raise ValidationError("spectrum", "needs two equally long columns with at least two rows")
        if not np.all(np.diff(omega) > 0):
            raise ValidationError("spectrum", "omega must be strictly increasing")
        if np.any(omega < 0) or np.any(density < 0):
            raise ValidationError("spectrum", "omega and f(omega) must be non-negative")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "density", density)

    @property
    def mean_square_amplitude(self) -> float:
        return float(trapezoid(self.density, self.omega))

    @property
    def mean_frequency(self) -> float:
        weight = self.mean_square_amplitude
        if weight == 0:
            return 0.0
        return float(trapezoid(self.omega * self.density, self.omega)) / weight


@dataclass(frozen=True)
class RoughnessSpec:
    """Surface roughness: RMS amplitude and correlation length in metres.

    ``mean_final_energy_Ef`` is in joules; ``None`` selects Ef = Re(eps_n) + hbar * omega,
    with omega = v / lr, or the spectrum's mean frequency when a spectrum is set.
    """

    amplitude_br: float
    correlation_length_lr: float
    mean_final_energy_Ef: float | None = None
    spectrum: RoughnessSpectrum | None = None

    def __post_init__(self) -> None:
        if not math.isfinite(self.amplitude_br) or self.amplitude_br < 0:
            raise ValidationError("amplitude_br", f"must be >= 0, got {self.amplitude_br!r}")
        require_positive("correlation_length_lr", self.correlation_length_lr)
        if self.mean_final_energy_Ef is not None:
            require_positive("mean_final_energy_Ef", self.mean_final_energy_Ef)

    @classmethod
    def from_units(cls, br_nm: float, lr_um: float, Ef_neV: float | None = None, consts: PhysicalConstants = CODATA) -> RoughnessSpec:
        Ef = None if Ef_neV is None else Ef_neV * consts.nev_to_joule
        return cls(br_nm * constants.NM, lr_um * constants.UM, Ef)

    def with_amplitude(self, br: float) -> RoughnessSpec:
        return replace(self, amplitude_br=br)
