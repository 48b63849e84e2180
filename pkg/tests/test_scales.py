from __future__ import annotations

import math

import pytest

from world.errors import ValidationError
from world.mirror import CODATA, BeamSpec, MirrorSpec, PhysicalConstants
from world.scales import (
    classical_angular_momentum,
    classical_passage_time,
    flight_time,
    make_scales,
    scales_at,
)


def test_sapphire_scales_at_1000_mps(sapphire):
    scales = make_scales(BeamSpec(1000.0), sapphire)
    assert scales.l0_um == pytest.approx(0.0367, rel=5e-3)
    assert round(scales.l0_um, 2) == 0.04
    assert scales.eps0_neV == pytest.approx(15.36, rel=5e-3)
    assert scales.z0 == pytest.approx(9.77, rel=5e-3)
    assert scales.mu0 == pytest.approx(3.97e8, rel=5e-3)
    assert scales.accel_a == pytest.approx(4.0e7)
    assert scales.to_neV(scales.energy_E) == pytest.approx(5.227e6, rel=1e-3)


def test_energy_and_length_scales_are_consistent(sapphire):
    scales = scales_at(1300.0, sapphire)
    M, hbar = CODATA.neutron_mass, CODATA.hbar
    assert scales.eps0 == pytest.approx(M * scales.accel_a * scales.l0, rel=1e-12)
    assert scales.eps0 == pytest.approx(hbar**2 / (2 * M * scales.l0**2), rel=1e-12)


def test_barrier_height_scales_as_velocity_to_minus_four_thirds(sapphire):
    slow = scales_at(800.0, sapphire)
    fast = scales_at(1600.0, sapphire)
    assert slow.z0 / fast.z0 == pytest.approx(2 ** (4 / 3), rel=1e-12)


def test_classical_angular_momentum_matches_mu0(sapphire):
    beam = BeamSpec(1000.0)
    assert classical_angular_momentum(beam, sapphire) == pytest.approx(make_scales(beam, sapphire).mu0, rel=1e-14)


def test_custom_constants_are_used():
    consts = PhysicalConstants(neutron_mass=2 * CODATA.neutron_mass)
    mirror = MirrorSpec.material("sapphire")
    heavy = scales_at(1000.0, mirror, consts)
    light = scales_at(1000.0, mirror)
    assert heavy.l0 / light.l0 == pytest.approx(2 ** (-2 / 3), rel=1e-12)


def test_flight_and_passage_times(sapphire):
    assert flight_time(sapphire, 1000.0) == pytest.approx(5e-5)
    assert flight_time(sapphire, 2000.0) == pytest.approx(2.5e-5)
    h = 1e-6
    assert classical_passage_time(sapphire, 1000.0, h) == pytest.approx(math.sqrt(2 * h * 0.025) / 1000.0)


@pytest.mark.parametrize("velocity", [0.0, -5.0, math.nan])
def test_non_positive_velocity_is_rejected(velocity):
    with pytest.raises(ValidationError) as excinfo:
        BeamSpec(velocity)
    assert excinfo.value.field == "velocity_v"


def test_mirror_longer_than_circumference_is_rejected():
    with pytest.raises(ValidationError) as excinfo:
        MirrorSpec.from_units(1.0, 7.0, 150.0)
    assert excinfo.value.field == "length_L"


def test_unknown_material_is_rejected():
    with pytest.raises(ValidationError):
        MirrorSpec.material("graphite")


def test_passage_time_needs_a_band_height(sapphire):
    with pytest.raises(ValidationError):
        classical_passage_time(sapphire, 1000.0, 0.0)
