"""Deterministic CSV output and companion gnuplot scripts."""

from __future__ import annotations

import csv
import math
import os
import tempfile
from pathlib import Path
from typing import Iterable, List, Sequence

from config import settings
from entities.curves import FluxCurve, LifetimeRow, ScalingReport
from entities.resonance import Resonance

RESONANCE_HEADER = [
    "n",
    "re_lambda",
    "im_lambda",
    "re_eps_neV",
    "im_eps_neV",
    "gamma_neV",
    "tau_s",
    "re_mu",
    "im_mu",
    "residual",
]
LIFETIME_HEADER = ["v_mps", "n", "tau_s", "t_flight_s", "exists"]
SCALING_HEADER = ["U0_neV", "vc_mps", "Ef_neV", "pion_per_s"]


def format_value(value: object) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return settings.CSV_FLOAT_FORMAT.format(value)
    return str(value)


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[object]]) -> Path:
    """Write the table to a temporary file next to ``path`` and move it into place."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with tempfile.NamedTemporaryFile(
        "w", dir=target.parent, prefix=f".{target.name}.", suffix=".tmp", delete=False, newline="", encoding="utf-8"
    ) as handle:
        writer = csv.writer(handle, delimiter=settings.CSV_DELIMITER, lineterminator=settings.CSV_LINE_TERMINATOR)
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(value) for value in row])
    os.replace(handle.name, target)
    return target


def resonance_rows(states: Sequence[Resonance]) -> List[list]:
    rows = []
    for state in states:
        energy = state.energy_neV
        rows.append(
            [
                state.index_n,
                state.eigenvalue.real,
                state.eigenvalue.imag,
                energy.real,
                energy.imag,
                state.width_neV,
                state.lifetime_tau,
                state.ang_momentum_mu.real,
                state.ang_momentum_mu.imag,
                state.residual,
            ]
        )
    return rows


def lifetime_rows(rows: Sequence[LifetimeRow]) -> List[list]:
    return [[row.velocity, row.index_n, row.lifetime_tau, row.flight_time, row.exists] for row in rows]


def curve_header(curve: FluxCurve, with_smooth: bool = False) -> List[str]:
    header = ["v_mps", "relative_flux"]
    if with_smooth:
        header.append("smooth_relative_flux")
    header += ["flux_per_s", "state_count"]
    header += [f"state_{n}_per_s" for n in sorted(curve.per_state)]
    header.append("status")
    return header


def curve_rows(curve: FluxCurve, smooth: FluxCurve | None = None) -> List[list]:
    rows = []
    for i, v in enumerate(curve.velocity_grid):
        row: list = [v, curve.relative_flux[i]]
        if smooth is not None:
            row.append(smooth.relative_flux[i])
        row += [curve.absolute_flux[i], curve.state_counts[i]]
        row += [curve.per_state[n][i] for n in sorted(curve.per_state)]
        row.append(curve.status[i])
        rows.append(row)
    return rows


def scaling_rows(report: ScalingReport, nev_to_joule: float) -> List[list]:
    return [
        [row.fermi_potential_neV, row.critical_velocity, row.final_energy / nev_to_joule, row.ionization_rate]
        for row in report.rows
    ]


_PLOTS = {
    "resonances": ('set xlabel "n"\nset ylabel "Re lambda"\n', 'plot "{csv}" using 1:2 with linespoints title "Re lambda_n"'),
    "lifetimes": (
        'set xlabel "v (m/s)"\nset ylabel "time (s)"\nset logscale y\n',
        'plot for [n=1:{states}] "{csv}" using 1:($2==n ? $3 : 1/0) with lines title sprintf("tau_%d", n), '
        '"{csv}" using 1:($2==1 ? $4 : 1/0) with lines dashtype 2 title "L/v"',
    ),
    "sweep": ('set xlabel "v (m/s)"\nset ylabel "F/F0"\n', 'plot "{csv}" using 1:2 with lines title "F/F0"'),
    "rough-sweep": (
        'set xlabel "v (m/s)"\nset ylabel "F/F0"\n',
        'plot "{csv}" using 1:2 with lines title "rough", "{csv}" using 1:3 with lines dashtype 2 title "smooth"',
    ),
    "scaling-check": (
        'set xlabel "U0 (neV)"\nset ylabel "P_ion (1/s)"\nset logscale xy\n',
        'plot "{csv}" using 1:4 with linespoints title "P_ion at v_c"',
    ),
}


def write_plot_script(path: str | Path, csv_path: str | Path, kind: str, states: int = 2) -> Path:
    """gnuplot commands that render ``csv_path`` next to it as PNG."""
    setup, plot = _PLOTS[kind]
    csv_path = Path(csv_path)
    lines = [
        'set datafile separator ","',
        "set terminal pngcairo size {},{}".format(settings.CHART_WIDTH, settings.CHART_HEIGHT),
        f'set output "{csv_path.with_suffix(".png").as_posix()}"',
        "set grid",
        setup.rstrip("\n"),
        plot.format(csv=csv_path.as_posix(), states=states),
        "",
    ]
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text("\n".join(lines), encoding="utf-8")
    return target
