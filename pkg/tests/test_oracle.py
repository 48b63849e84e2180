from __future__ import annotations

import pytest
from scipy import special

from conftest import scales_for_barrier
from systems.oracle import ShootingGrid, oracle_resonances, shoot_mismatch
from systems.resonance import appearance_lambda, solve_resonances
from world.errors import ValidationError

FIRST_AIRY_ZERO = -special.ai_zeros(1)[0][0]


def _grid(z0: float, step: float = 1e-3) -> ShootingGrid:
    return ShootingGrid.for_barrier(z0, min(z0, appearance_lambda(4)), step)


def test_mismatch_vanishes_at_an_airy_root():
    lam = solve_resonances(scales_for_barrier(10.0), 1)[0].eigenvalue
    assert abs(shoot_mismatch(lam, 10.0, _grid(10.0))) < 1e-4


def test_mismatch_is_large_between_levels():
    assert abs(shoot_mismatch(2.9, 10.0, _grid(10.0))) >= 0.1


def test_hard_wall_level_misses_by_the_penetration_shift():
    near = abs(shoot_mismatch(FIRST_AIRY_ZERO, 100.0, _grid(100.0)))
    far = abs(shoot_mismatch(FIRST_AIRY_ZERO, 200.0, _grid(200.0)))
    assert near < 0.11
    assert far < near


def test_mismatch_converges_at_fourth_order():
    lam = 1.5 - 0.01j
    values = [shoot_mismatch(lam, 4.0, _grid(4.0, step)) for step in (1e-3, 5e-4, 2.5e-4)]
    ratio = abs(values[0] - values[1]) / abs(values[1] - values[2])
    assert 10.0 < ratio < 22.0


def test_roots_are_stable_under_step_halving():
    coarse = oracle_resonances(10.0, 2, step=1e-3).roots
    fine = oracle_resonances(10.0, 2, step=5e-4).roots
    for n in (1, 2):
        assert abs(coarse[n] - fine[n]) < 1e-6


@pytest.mark.parametrize("z0", [4.0, 7.0, 10.0, 15.0])
def test_shooting_agrees_with_the_airy_solver(z0):
    states = solve_resonances(scales_for_barrier(z0), 3)
    shot = oracle_resonances(z0, 3)
    assert shot.failures == {}
    assert sorted(shot.roots) == [s.index_n for s in states]
    for state in states[:2]:
        lam = state.eigenvalue
        other = shot.roots[state.index_n]
        assert other.real == pytest.approx(lam.real, rel=1e-4)
        if abs(lam.imag) >= 1e-6:
            assert other.imag == pytest.approx(lam.imag, rel=1e-2)


def test_grid_validation():
    with pytest.raises(ValidationError):
        ShootingGrid(z_min=1.0, z_max=20.0)
    with pytest.raises(ValidationError):
        ShootingGrid(z_min=-10.0, z_max=20.0, step=0.01)
    with pytest.raises(ValidationError):
        ShootingGrid(z_min=-10.0, z_max=20.0, match_at=25.0)


def test_grid_must_reach_beyond_the_barrier():
    short = ShootingGrid(z_min=-10.0, z_max=12.0)
    with pytest.raises(ValidationError):
        shoot_mismatch(2.0, 10.0, short)
    shallow = ShootingGrid(z_min=-1.0, z_max=30.0)
    with pytest.raises(ValidationError):
        shoot_mismatch(5.0, 10.0, shallow)


def test_oracle_needs_states():
    with pytest.raises(ValidationError):
        oracle_resonances(10.0, 0)
