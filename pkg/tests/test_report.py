from __future__ import annotations

import csv
import math

import pytest

from conftest import scales_for_barrier
from entities.curves import FluxCurve, LifetimeRow
from systems.resonance import solve_resonances
from ui.report import (
    LIFETIME_HEADER,
    RESONANCE_HEADER,
    curve_header,
    curve_rows,
    format_value,
    lifetime_rows,
    resonance_rows,
    write_csv,
    write_plot_script,
)


@pytest.mark.parametrize(
    "value, text",
    [
        (True, "1"),
        (False, "0"),
        (3, "3"),
        (0.1, "1.00000000000e-01"),
        (-2.5e-30, "-2.50000000000e-30"),
        (math.inf, "inf"),
        (math.nan, "nan"),
        ("ok", "ok"),
    ],
)
def test_format_value(value, text):
    assert format_value(value) == text


def test_resonance_table(tmp_path):
    states = solve_resonances(scales_for_barrier(7.0), 2)
    path = write_csv(tmp_path / "nested" / "res.csv", RESONANCE_HEADER, resonance_rows(states))
    with path.open(newline="") as handle:
        table = list(csv.reader(handle))
    assert table[0] == RESONANCE_HEADER
    assert len(table) == 1 + len(states)
    assert table[1][0] == "1"
    assert float(table[1][1]) == pytest.approx(states[0].eigenvalue.real, rel=1e-11)
    assert not list(path.parent.glob(".*.tmp"))


def test_rewriting_is_byte_identical(tmp_path):
    rows = lifetime_rows([LifetimeRow(1000.0, 1, 2.5e-4, 5e-5, True), LifetimeRow(1000.0, 2, math.nan, 5e-5, False)])
    first = write_csv(tmp_path / "a.csv", LIFETIME_HEADER, rows).read_bytes()
    second = write_csv(tmp_path / "a.csv", LIFETIME_HEADER, rows).read_bytes()
    assert first == second
    assert first.decode().splitlines()[2].endswith(",nan,5.00000000000e-05,0")


def test_curve_rows_with_smooth_column():
    curve = FluxCurve(
        velocity_grid=[1000.0, 1100.0],
        relative_flux=[1.0, 0.5],
        reference_velocity=1000.0,
        reference_flux=2.0,
        per_state={1: [1.0, 0.6], 2: [1.0, 0.4]},
        absolute_flux=[2.0, 1.0],
        state_counts=[2, 2],
        status=["ok", "ok"],
    )
    header = curve_header(curve, with_smooth=True)
    rows = curve_rows(curve, curve)
    assert header == [
        "v_mps",
        "relative_flux",
        "smooth_relative_flux",
        "flux_per_s",
        "state_count",
        "state_1_per_s",
        "state_2_per_s",
        "status",
    ]
    assert rows[1] == [1100.0, 0.5, 0.5, 1.0, 2, 0.6, 0.4, "ok"]


def test_plot_script_reads_the_csv(tmp_path):
    script = write_plot_script(tmp_path / "plot.gp", tmp_path / "sweep.csv", "lifetimes", states=3)
    text = script.read_text()
    assert 'set datafile separator ","' in text
    assert (tmp_path / "sweep.csv").as_posix() in text
    assert "[n=1:3]" in text
    assert (tmp_path / "sweep.png").as_posix() in text
