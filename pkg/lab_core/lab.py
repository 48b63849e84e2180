"""High-level orchestration of the subcommands."""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Callable, Dict, List, NamedTuple, Tuple

import numpy as np
from scipy import special

from assets.paths import OUTPUT_DIR
from config import constants, settings, tuning
from entities.curves import FluxCurve
from systems import flux, oracle, resonance, roughness
from systems.airy import airy_eval
from systems.steps import detect_steps
from ui import chart, report
from ui.config_file import RunConfig
from world.errors import CentrifugalError, PartialSweepError
from world.mirror import CODATA, MirrorSpec, PhysicalConstants, RoughnessSpec
from world.scales import scales_at

ORACLE_BARRIERS = (4.0, 7.0, 10.0, 15.0)
CROSSING_WINDOWS = {"sapphire": (600.0, 2500.0), "silicon": (300.0, 1200.0)}


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


class Lab:
    def __init__(self, config: RunConfig, consts: PhysicalConstants = CODATA) -> None:
        self.config = config
        self.consts = consts
        self.handlers: Dict[str, Callable[[], int]] = {
            "scales": self.run_scales,
            "resonances": self.run_resonances,
            "lifetimes": self.run_lifetimes,
            "sweep": self.run_sweep,
            "rough-sweep": self.run_rough_sweep,
            "scaling-check": self.run_scaling_check,
            "verify": self.run_verify,
        }

    def run(self, subcommand: str) -> int:
        self.config.require(subcommand)
        logging.info("Running %s", subcommand)
        return self.handlers[subcommand]()

    @property
    def mirror(self) -> MirrorSpec:
        return self.config.mirror

    def _csv_path(self, subcommand: str) -> Path:
        return self.config.output.path or OUTPUT_DIR / f"{subcommand}.csv"

    def _write(self, subcommand: str, header, rows, states: int = 2) -> Path:
        path = report.write_csv(self._csv_path(subcommand), header, rows)
        logging.info("Wrote %s", path)
        if self.config.output.plot_script is not None:
            script = report.write_plot_script(self.config.output.plot_script, path, subcommand, states)
            logging.info("Wrote plot script %s", script)
        return path

    def _chart(self, title: str, series: List[chart.Series], x_label: str, y_label: str, log_y: bool = False) -> None:
        if self.config.output.png is None:
            return
        path = chart.render_chart(self.config.output.png, title, series, x_label, y_label, log_y)
        logging.info("Wrote chart %s", path)

    def run_scales(self) -> int:
        scales = scales_at(self.config.velocity, self.mirror, self.consts)
        print(f"mirror      {self.mirror.material_label} (R={self.mirror.radius_R:g} m, L={self.mirror.length_L:g} m, U0={self.mirror.fermi_potential_U0:g} neV)")
        print(f"velocity    {scales.velocity:.6g} m/s")
        print(f"l0          {scales.l0_um:.6g} um")
        print(f"eps0        {scales.eps0_neV:.6g} neV")
        print(f"z0          {scales.z0:.6g}")
        print(f"mu0         {scales.mu0:.6g}")
        print(f"a           {scales.accel_a:.6g} m/s^2")
        print(f"E           {scales.to_neV(scales.energy_E):.6g} neV")
        return settings.EXIT_OK

    def run_resonances(self) -> int:
        scales = scales_at(self.config.velocity, self.mirror, self.consts)
        states = resonance.solve_resonances(scales, self.config.n_max)
        logging.info("Found %d states at v=%.6g m/s (z0=%.6g)", len(states), scales.velocity, scales.z0)
        self._write("resonances", report.RESONANCE_HEADER, report.resonance_rows(states))
        self._chart(
            f"Re lambda_n at v={scales.velocity:g} m/s",
            [chart.Series("Re lambda", [s.index_n for s in states], [s.eigenvalue.real for s in states])],
            "n",
            "Re lambda",
        )
        return settings.EXIT_OK

    def run_lifetimes(self) -> int:
        sweep = self.config.sweep
        grid = np.linspace(sweep.v_min, sweep.v_max, sweep.steps)
        rows = resonance.lifetime_curve(self.mirror, grid, sweep.n_states, self.consts, self.config.output.threads)
        self._write("lifetimes", report.LIFETIME_HEADER, report.lifetime_rows(rows), sweep.n_states)
        series = [
            chart.Series(f"tau_{n}", grid, [row.lifetime_tau for row in rows if row.index_n == n])
            for n in range(1, sweep.n_states + 1)
        ]
        series.append(chart.Series("L/v", grid, [row.flight_time for row in rows if row.index_n == 1]))
        series.append(chart.Series("t_cl n=1", grid, [row.passage_time for row in rows if row.index_n == 1]))
        self._chart("Lifetimes vs flight time", series, "v (m/s)", "time (s)", log_y=True)
        failed = len({row.velocity for row in rows if row.status != "ok"})
        if len(grid) - failed < tuning.SWEEP_MIN_SUCCESS * len(grid):
            logging.error("%d of %d lifetime velocities failed", failed, len(grid))
            return settings.EXIT_PARTIAL_SWEEP
        if failed:
            logging.warning("%d of %d lifetime velocities failed", failed, len(grid))
        return settings.EXIT_OK

    def _sweep(self, spec: RoughnessSpec | None) -> Tuple[FluxCurve, int]:
        sweep = self.config.sweep
        args = (sweep.v_min, sweep.v_max, sweep.steps, sweep.reference_velocity, self.config.population, self.consts)
        kwargs = {"n_max": sweep.n_states, "threads": self.config.output.threads}
        try:
            if spec is None:
                curve = flux.flux_sweep(self.mirror, *args, **kwargs)
            else:
                curve = roughness.rough_flux_sweep(self.mirror, spec, *args, **kwargs)
        except PartialSweepError as exc:
            logging.error("%s; writing the incomplete curve", exc)
            return exc.curve, settings.EXIT_PARTIAL_SWEEP
        return curve, settings.EXIT_OK

    def _log_steps(self, curve: FluxCurve) -> None:
        for step in detect_steps(curve)[:4]:
            logging.info("Step near v=%.6g m/s (|dF/dv|=%.3g per m/s)", step.velocity, step.slope)

    def run_sweep(self) -> int:
        curve, status = self._sweep(None)
        self._log_steps(curve)
        self._write("sweep", report.curve_header(curve), report.curve_rows(curve))
        self._chart("Deflected flux", [chart.Series("F/F0", curve.velocity_grid, curve.relative_flux)], "v (m/s)", "F/F0")
        return status

    def run_rough_sweep(self) -> int:
        smooth, smooth_status = self._sweep(None)
        rough, rough_status = self._sweep(self.config.roughness)
        self._log_steps(rough)
        self._write("rough-sweep", report.curve_header(rough, with_smooth=True), report.curve_rows(rough, smooth))
        br_nm = self.config.roughness.amplitude_br / constants.NM
        self._chart(
            "Deflected flux with roughness",
            [
                chart.Series(f"br={br_nm:g} nm", rough.velocity_grid, rough.relative_flux),
                chart.Series("smooth", smooth.velocity_grid, smooth.relative_flux),
            ],
            "v (m/s)",
            "F/F0",
        )
        return max(smooth_status, rough_status)

    def run_scaling_check(self) -> int:
        params = self.config.scaling
        result = roughness.potential_scaling_check(params.U0_list, self.mirror, self.config.roughness, self.consts, params.ef_model)
        print(f"fitted slope      {result.slope:.6f}")
        print(f"analytic exponent {result.analytic_exponent:.6f}")
        for term, exponent in result.decomposition.items():
            print(f"  {term:<36} {exponent:+.4f}")
        self._write("scaling-check", report.SCALING_HEADER, report.scaling_rows(result, self.consts.nev_to_joule))
        self._chart(
            "Ionization rate at v_c",
            [chart.Series("P_ion", [r.fermi_potential_neV for r in result.rows], [r.ionization_rate for r in result.rows])],
            "U0 (neV)",
            "P_ion (1/s)",
            log_y=True,
        )
        return settings.EXIT_OK

    def run_verify(self) -> int:
        checks = [
            self._check_scales,
            self._check_airy,
            self._check_hard_wall,
            self._check_oracle,
            self._check_crossings,
            self._check_scaling,
        ]
        results: List[CheckResult] = []
        for check in checks:
            try:
                results.extend(check())
            except CentrifugalError as exc:
                results.append(CheckResult(check.__name__.removeprefix("_check_"), False, f"raised {exc}"))
        for result in results:
            print(f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail}")
        failed = sum(1 for r in results if not r.passed)
        logging.info("%d of %d verification cases passed", len(results) - failed, len(results))
        return settings.EXIT_OK if failed == 0 else settings.EXIT_VERIFY_FAILED

    def _check_scales(self) -> List[CheckResult]:
        scales = scales_at(1000.0, MirrorSpec.material("sapphire"), self.consts)
        ok = round(scales.l0_um, 2) == 0.04 and abs(scales.eps0_neV / 15.3 - 1) < 0.02 and abs(scales.z0 / 10 - 1) < 0.05
        detail = f"l0={scales.l0_um:.4f} um eps0={scales.eps0_neV:.4f} neV z0={scales.z0:.4f}"
        return [CheckResult("scales", ok, detail)]

    def _check_airy(self) -> List[CheckResult]:
        worst = 0.0
        for radius in np.linspace(0.5, 20.0, 40):
            for angle in np.linspace(-math.pi, math.pi, 25):
                quad = airy_eval(radius * complex(math.cos(angle), math.sin(angle)))
                scale = max(abs(quad.ai * quad.bi_prime), abs(quad.ai_prime * quad.bi), 1 / math.pi)
                worst = max(worst, abs(quad.wronskian() - 1 / math.pi) / scale)
        return [CheckResult("airy wronskian", worst < 1e-10, f"worst relative error {worst:.2e}")]

    def _check_hard_wall(self) -> List[CheckResult]:
        zeros = -special.ai_zeros(2)[0]
        mirror = MirrorSpec.material("sapphire")
        # velocity whose barrier height is z0 = 1e6
        v = 1000.0 * (scales_at(1000.0, mirror, self.consts).z0 / 1e6) ** 0.75
        states = resonance.solve_resonances(scales_at(v, mirror, self.consts), 2)
        results = []
        for state, zero in zip(states, zeros):
            ok = abs(state.eigenvalue.real / zero - 1) < 1e-3 and abs(state.eigenvalue.imag) < 1e-8
            results.append(CheckResult(f"hard wall n={state.index_n}", ok, f"lambda={state.eigenvalue:.8g} zero={zero:.8f}"))
        if len(states) < 2:
            results.append(CheckResult("hard wall", False, f"found {len(states)} states"))
        return results

    def _check_oracle(self) -> List[CheckResult]:
        results = []
        mirror = MirrorSpec.material("sapphire")
        reference = scales_at(1000.0, mirror, self.consts)
        for z0 in ORACLE_BARRIERS:
            v = 1000.0 * (reference.z0 / z0) ** 0.75
            scales = scales_at(v, mirror, self.consts)
            states = resonance.solve_resonances(scales, 3)
            shot = oracle.oracle_resonances(scales.z0, 3)
            results.append(
                CheckResult(f"oracle count z0={z0:g}", len(states) == len(shot.roots) and not shot.failures, f"airy={len(states)} shooting={len(shot.roots)}")
            )
            for state in states[:2]:
                other = shot.roots.get(state.index_n)
                if other is None:
                    results.append(CheckResult(f"oracle z0={z0:g} n={state.index_n}", False, "missing shooting root"))
                    continue
                lam = state.eigenvalue
                ok = abs(other.real / lam.real - 1) < 1e-4
                if abs(lam.imag) >= tuning.ORACLE_IMAG_FLOOR:
                    ok = ok and abs(other.imag / lam.imag - 1) < 1e-2
                results.append(CheckResult(f"oracle z0={z0:g} n={state.index_n}", ok, f"airy={lam:.10g} shooting={other:.10g}"))
        return results

    def _check_crossings(self) -> List[CheckResult]:
        results = []
        for material, expected in constants.BENCHMARK_STEPS.items():
            mirror = MirrorSpec.material(material)
            v_lo, v_hi = CROSSING_WINDOWS[material]
            for n, target in enumerate(expected, start=1):
                v = resonance.flight_crossing_velocity(mirror, n, v_lo, v_hi, self.consts)
                ok = abs(v / target - 1) < 0.15
                results.append(CheckResult(f"crossing {material} n={n}", ok, f"{v:.1f} m/s (quoted {target:g})"))
        return results

    def _check_scaling(self) -> List[CheckResult]:
        spec = RoughnessSpec.from_units(1.0, 1.0)
        result = roughness.potential_scaling_check([30.0, 60.0, 120.0, 300.0], MirrorSpec.material("sapphire"), spec, self.consts)
        ok = abs(result.slope - tuning.SCALING_SLOPE) < 0.15
        return [CheckResult("scaling U0^(17/8)", ok, f"slope={result.slope:.4f}")]
