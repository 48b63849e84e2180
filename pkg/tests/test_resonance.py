from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import special

from conftest import scales_for_barrier
from entities.resonance import Resonance
from systems.resonance import (
    appearance_lambda,
    count_real_brackets,
    critical_velocity_semiclassical,
    flight_crossing_velocity,
    lifetime_curve,
    matching_residual,
    semiclassical_condition_root,
    semiclassical_lambda,
    solve_resonances,
)
from world.errors import ConvergenceError, ValidationError
from world.scales import classical_passage_time, flight_time, scales_at

AIRY_ZEROS = -special.ai_zeros(3)[0]


def test_states_at_moderate_barrier_are_ordered_and_decaying():
    states = solve_resonances(scales_for_barrier(10.0), 3)
    assert [s.index_n for s in states] == [1, 2, 3]
    lambdas = [s.eigenvalue for s in states]
    assert all(a.real < b.real for a, b in zip(lambdas, lambdas[1:]))
    assert all(lam.imag < 0 for lam in lambdas)
    assert abs(lambdas[0].imag) < abs(lambdas[1].imag) < abs(lambdas[2].imag)
    assert all(lam.real < 10.0 for lam in lambdas)
    for state in states:
        assert state.residual < 1e-9
        assert abs(matching_residual(state.eigenvalue, 10.0)) < 1e-9


def test_width_and_lifetime_follow_the_eigenvalue():
    state = solve_resonances(scales_for_barrier(7.0), 1)[0]
    scales = state.scales
    assert state.width_gamma == pytest.approx(-2 * scales.eps0 * state.eigenvalue.imag, rel=1e-14)
    assert state.lifetime_tau * state.width_gamma == pytest.approx(scales.consts.hbar, rel=1e-14)
    assert state.energy_eps == pytest.approx(scales.eps0 * state.eigenvalue, rel=1e-14)
    assert state.ang_momentum_mu.real < scales.mu0


def test_zero_width_gives_infinite_lifetime():
    state = Resonance.from_eigenvalue(1, complex(2.0, 0.0), scales_for_barrier(50.0))
    assert state.width_gamma == 0.0
    assert math.isinf(state.lifetime_tau)


def test_high_barrier_approaches_corrected_hard_wall_levels():
    z0 = 1e4
    states = solve_resonances(scales_for_barrier(z0), 2)
    for state, zero in zip(states, AIRY_ZEROS):
        assert state.eigenvalue.real == pytest.approx(zero - 1 / math.sqrt(z0 - zero), abs=1e-4)


def test_very_high_barrier_reproduces_airy_zeros():
    states = solve_resonances(scales_for_barrier(1e6), 3)
    assert len(states) == 3
    for state, zero in zip(states, AIRY_ZEROS):
        assert state.eigenvalue.real == pytest.approx(zero, rel=1e-3)
        assert -1e-8 < state.eigenvalue.imag <= 0.0
        assert state.width_gamma >= 0.0


def test_no_state_survives_below_the_first_appearance():
    assert solve_resonances(scales_for_barrier(0.5 * appearance_lambda(1)), 4) == []


def test_state_count_does_not_grow_with_velocity(sapphire):
    counts = [len(solve_resonances(scales_at(v, sapphire), 8)) for v in np.linspace(800.0, 2400.0, 9)]
    assert all(a >= b for a, b in zip(counts, counts[1:]))


def test_real_brackets_cover_the_solved_states():
    brackets = count_real_brackets(10.0)
    states = solve_resonances(scales_for_barrier(10.0), 3)
    assert len(brackets) >= len(states)
    for state, (lo, hi) in zip(states, brackets):
        assert lo - 0.5 < state.eigenvalue.real < hi + 0.5


def test_appearance_lambda_values():
    assert appearance_lambda(1) == pytest.approx((0.375 * math.pi) ** (2 / 3))
    assert appearance_lambda(2) == pytest.approx((1.875 * math.pi) ** (2 / 3))


def test_semiclassical_estimate_tracks_exact_levels():
    assert semiclassical_lambda(1, 1e12).lambda_estimate == pytest.approx(2.3203, rel=1e-4)
    states = solve_resonances(scales_for_barrier(10.0), 2)
    first = semiclassical_lambda(1, 10.0)
    second = semiclassical_lambda(2, 10.0)
    assert first.valid and second.valid
    assert first.lambda_estimate == pytest.approx(states[0].eigenvalue.real, rel=0.15)
    assert second.lambda_estimate == pytest.approx(states[1].eigenvalue.real, rel=0.15)
    assert first.gamma_estimate > 0


def test_semiclassical_estimate_is_invalid_below_the_level():
    estimate = semiclassical_lambda(1, 1.5)
    assert not estimate.valid
    assert math.isnan(estimate.gamma_estimate)


def test_semiclassical_condition_root_is_close_to_the_exact_one():
    exact = solve_resonances(scales_for_barrier(10.0), 1)[0].eigenvalue
    root = semiclassical_condition_root(1, 10.0)
    assert root.real == pytest.approx(exact.real, rel=0.1)
    assert root.imag < 0


def test_critical_velocities(sapphire):
    first = critical_velocity_semiclassical(1, sapphire)
    assert first == pytest.approx(5.1e3, rel=0.02)
    for n in (2, 3, 5):
        ratio = critical_velocity_semiclassical(n, sapphire) / first
        assert ratio == pytest.approx(math.sqrt(1 / (4 * n - 3)), rel=1e-12)
    assert scales_at(first, sapphire).z0 == pytest.approx(appearance_lambda(1), rel=1e-10)


def test_invalid_arguments_are_rejected(sapphire):
    with pytest.raises(ValidationError):
        solve_resonances(scales_at(1000.0, sapphire), 0)
    with pytest.raises(ValidationError):
        matching_residual(1.0, 0.0)
    with pytest.raises(ValidationError):
        critical_velocity_semiclassical(0, sapphire)


def test_lifetime_curve_rows(sapphire):
    grid = [900.0, 1500.0, 2100.0]
    rows = lifetime_curve(sapphire, grid, 2, threads=2)
    assert len(rows) == 6
    assert [(r.velocity, r.index_n) for r in rows] == [(v, n) for v in grid for n in (1, 2)]
    for row in rows:
        assert row.status == "ok"
        assert row.flight_time == pytest.approx(flight_time(sapphire, row.velocity))
        if row.exists:
            assert row.lifetime_tau > 0
            assert 0 < row.passage_time < row.flight_time
        else:
            assert math.isnan(row.lifetime_tau)
            assert math.isnan(row.passage_time)
    by_key = {(r.velocity, r.index_n): r for r in rows}
    assert by_key[(900.0, 1)].lifetime_tau > by_key[(1500.0, 1)].lifetime_tau


def test_lifetime_curve_needs_a_sorted_grid(sapphire):
    with pytest.raises(ValidationError):
        lifetime_curve(sapphire, [1500.0, 900.0], 2)


@pytest.mark.parametrize(
    "material, window, expected",
    [
        ("sapphire", (600.0, 2500.0), (1700.0, 1350.0)),
        ("silicon", (300.0, 1200.0), (810.0, 650.0)),
    ],
)
def test_lifetime_crosses_flight_time_near_the_quoted_steps(material, window, expected, request):
    mirror = request.getfixturevalue(material)
    for n, target in enumerate(expected, start=1):
        v = flight_crossing_velocity(mirror, n, *window)
        assert v == pytest.approx(target, rel=0.15)


def test_missing_crossing_is_reported(sapphire):
    with pytest.raises(ConvergenceError):
        flight_crossing_velocity(sapphire, 1, 3000.0, 4000.0)


def test_lifetime_rows_carry_the_classical_passage_time(sapphire):
    (row, _) = lifetime_curve(sapphire, [1200.0], 2)
    state = solve_resonances(scales_at(1200.0, sapphire), 1)[0]
    expected = classical_passage_time(sapphire, 1200.0, state.eigenvalue.real * state.scales.l0)
    assert row.passage_time == pytest.approx(expected, rel=1e-12)
