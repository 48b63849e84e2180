"""Roughness-induced ionization of the centrifugal states and its effect on the flux."""

from __future__ import annotations

import logging
import math
import threading
from typing import List, NamedTuple, Sequence

import numpy as np
from scipy.integrate import trapezoid

from config import tuning
from entities.curves import FluxCurve, PopulationModel, ScalingReport, ScalingRow
from entities.resonance import Resonance
from systems.flux import run_sweep, velocity_grid
from systems.resonance import critical_velocity_semiclassical
from world.errors import DegenerateFitError, StateAboveBarrierError, ValidationError
from world.mirror import CODATA, MirrorSpec, PhysicalConstants, RoughnessSpec, require_positive
from world.scales import ScaleSet

EF_MODELS = ("roughness-quantum", "pinned")


class IonizationRate(NamedTuple):
    state_resolved: float
    simplified: float
    final_energy: float
    assumption_ok: bool


def roughness_frequency(v: float, spec: RoughnessSpec, mirror: MirrorSpec) -> float:
    require_positive("velocity_v", v)
    return v / spec.correlation_length_lr


def _mean_square(spec: RoughnessSpec) -> float:
    if spec.spectrum is not None:
        return spec.spectrum.mean_square_amplitude
    return spec.amplitude_br**2


def _simplified_rate(mean_square: float, U0: float, v: float, R: float, Ef: float, consts: PhysicalConstants) -> float:
    M = consts.neutron_mass
    return mean_square * U0 * v**2 * M**2 / (consts.hbar**2 * R * math.sqrt(2 * M * Ef))


def resolve_final_energy(state: Resonance, spec: RoughnessSpec, mirror: MirrorSpec) -> tuple[float, bool]:
    """Mean final energy and whether it satisfies Ef >> Re(eps_n)."""
    level = state.energy_eps.real
    if spec.mean_final_energy_Ef is not None:
        Ef = spec.mean_final_energy_Ef
    elif spec.spectrum is not None:
        Ef = level + state.scales.consts.hbar * spec.spectrum.mean_frequency
    else:
        omega_r = roughness_frequency(state.scales.velocity, spec, mirror)
        Ef = level + state.scales.consts.hbar * omega_r
    if not Ef > 0:
        raise ValidationError("mean_final_energy_Ef", f"resolved to a non-positive value {Ef!r}")
    return Ef, Ef >= tuning.EF_ASSUMPTION_FACTOR * level


def _check_below_barrier(state: Resonance, scales: ScaleSet) -> None:
    if scales.z0 <= state.eigenvalue.real:
        raise StateAboveBarrierError(
            f"state n={state.index_n} lies at or above the barrier top (Re lambda={state.eigenvalue.real:.6g}, z0={scales.z0:.6g})"
        )


def ionization_probability(
    state: Resonance,
    spec: RoughnessSpec,
    scales: ScaleSet,
    mirror: MirrorSpec,
    consts: PhysicalConstants = CODATA,
) -> IonizationRate:
    _check_below_barrier(state, scales)
    Ef, ok = resolve_final_energy(state, spec, mirror)
    mean_square = _mean_square(spec)
    U0 = scales.fermi_potential
    M = consts.neutron_mass
    barrier = scales.z0 - state.eigenvalue.real
    resolved = mean_square * U0**2 * M / (consts.hbar**2 * scales.l0 * barrier * math.sqrt(2 * M * Ef))
    simplified = _simplified_rate(mean_square, U0, scales.velocity, mirror.radius_R, Ef, consts)
    return IonizationRate(resolved, simplified, Ef, ok)


def ionization_rate_simplified(
    state: Resonance,
    spec: RoughnessSpec,
    scales: ScaleSet,
    mirror: MirrorSpec,
    consts: PhysicalConstants = CODATA,
) -> float:
    return ionization_probability(state, spec, scales, mirror, consts).simplified


def ionization_width(
    state: Resonance,
    spec: RoughnessSpec,
    scales: ScaleSet,
    mirror: MirrorSpec,
    consts: PhysicalConstants = CODATA,
) -> float:
    """Golden-rule ionization width in joules."""
    _check_below_barrier(state, scales)
    spectrum = spec.spectrum
    if spectrum is None or spec.mean_final_energy_Ef is not None:
        return consts.hbar * ionization_probability(state, spec, scales, mirror, consts).simplified
    # auto final energy resolved per spectral component
    M = consts.neutron_mass
    Ef = state.energy_eps.real + consts.hbar * spectrum.omega
    integrand = (
        spectrum.density
        * scales.fermi_potential
        * scales.velocity**2
        * M**2
        / (consts.hbar**2 * mirror.radius_R * np.sqrt(2 * M * Ef))
    )
    return consts.hbar * float(trapezoid(integrand, spectrum.omega))


class _EfWatch:
    """Collects the Ef >> eps_n diagnostic across sweep points."""

    def __init__(self, spec: RoughnessSpec, mirror: MirrorSpec, consts: PhysicalConstants) -> None:
        self.spec = spec
        self.mirror = mirror
        self.consts = consts
        self.violations = 0
        self._lock = threading.Lock()

    def __call__(self, state: Resonance) -> float:
        _, ok = resolve_final_energy(state, self.spec, self.mirror)
        if not ok:
            with self._lock:
                self.violations += 1
        return ionization_width(state, self.spec, state.scales, self.mirror, self.consts)


def rough_flux_sweep(
    mirror: MirrorSpec,
    spec: RoughnessSpec,
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
    watch = _EfWatch(spec, mirror, consts)
    curve = run_sweep(mirror, grid, reference_velocity, model, consts, n_max, threads, extra_width=watch)
    if watch.violations:
        logging.warning(
            "mean final energy below %g x Re(eps_n) for %d state evaluations; Ef >> eps_n does not hold",
            tuning.EF_ASSUMPTION_FACTOR,
            watch.violations,
        )
    return curve


def potential_scaling_check(
    U0_list: Sequence[float],
    template: MirrorSpec,
    spec: RoughnessSpec,
    consts: PhysicalConstants = CODATA,
    ef_model: str = "roughness-quantum",
) -> ScalingReport:
    """Ionization rate of the lowest state at its own appearance velocity, fitted against U0 (neV)."""
    if ef_model not in EF_MODELS:
        raise ValidationError("ef_model", f"expected one of {EF_MODELS}, got {ef_model!r}")
    if len(set(U0_list)) < 3:
        raise DegenerateFitError(f"need at least 3 distinct Fermi potentials, got {list(U0_list)}")
    if spec.amplitude_br <= 0 and spec.spectrum is None:
        raise ValidationError("amplitude_br", "scaling check needs a non-zero roughness amplitude")
    if ef_model == "pinned" and spec.mean_final_energy_Ef is None:
        raise ValidationError("mean_final_energy_Ef", "pinned model needs an explicit Ef")

    rows: List[ScalingRow] = []
    for U0_neV in U0_list:
        mirror = template.with_potential(U0_neV)
        vc = critical_velocity_semiclassical(1, mirror, consts)
        if ef_model == "pinned":
            Ef = spec.mean_final_energy_Ef
        else:
            Ef = consts.hbar * roughness_frequency(vc, spec, mirror)
        rate = _simplified_rate(_mean_square(spec), mirror.fermi_potential_joule(consts), vc, mirror.radius_R, Ef, consts)
        rows.append(ScalingRow(U0_neV, vc, Ef, rate))

    log_u = np.log([row.fermi_potential_neV for row in rows])
    log_rate = np.log([row.ionization_rate for row in rows])
    slope, intercept = np.polyfit(log_u, log_rate, 1)
    decomposition = {
        "fermi potential prefactor": 1.0,
        "velocity squared at vc ~ U0^(3/4)": 1.5,
        "final energy^(-1/2)": -0.375 if ef_model == "roughness-quantum" else 0.0,
    }
    return ScalingReport(
        rows=rows,
        slope=float(slope),
        intercept=float(intercept),
        analytic_exponent=sum(decomposition.values()),
        decomposition=decomposition,
        ef_model=ef_model,
    )
