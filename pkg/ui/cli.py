"""Command-line entry: argument parsing, config resolution and exit codes."""

from __future__ import annotations

import argparse
import logging
from dataclasses import replace
from pathlib import Path
from typing import List, Sequence

from assets.loaders import load_config_text, load_material_config
from assets.paths import ASSETS_DIR
from config import constants, settings
from lab_core.lab import Lab
from ui.config_file import SUBCOMMANDS, RunConfig, parse_config
from world.errors import (
    AiryDomainError,
    CentrifugalError,
    ConfigError,
    ConvergenceError,
    DegenerateFitError,
    PartialSweepError,
    RootCollisionError,
    StateAboveBarrierError,
    ValidationError,
)

EPILOG = """\
CSV outputs (comma separated, header row, 12 significant digits):
  resonances     n, re_lambda, im_lambda, re_eps_neV, im_eps_neV, gamma_neV, tau_s, re_mu, im_mu, residual
  lifetimes      v_mps, n, tau_s, t_flight_s, exists
  sweep          v_mps, relative_flux, flux_per_s, state_count, state_<n>_per_s..., status
  rough-sweep    v_mps, relative_flux, smooth_relative_flux, flux_per_s, state_count, state_<n>_per_s..., status
  scaling-check  U0_neV, vc_mps, Ef_neV, pion_per_s

exit codes: 0 ok, 1 verification failed, 2 bad configuration,
            3 solver did not converge, 4 too many sweep points failed
"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="main.py",
        description="Quasi-stationary neutron states near a curved mirror.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", type=Path, help="run configuration (.ini)")
    parser.add_argument(
        "--material",
        choices=sorted(constants.MATERIALS),
        help="bundled material configuration, used when --config is absent (default: sapphire)",
    )
    parser.add_argument("--velocity", type=float, help="neutron velocity in m/s, overrides [beam] v_mps")
    parser.add_argument("--output", type=Path, help="CSV output path")
    parser.add_argument("--plot-script", type=Path, help="also write a gnuplot script for the CSV")
    parser.add_argument("--png", type=Path, help="also render a PNG chart")
    parser.add_argument("--threads", type=int, help="worker threads for sweeps")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Read the configuration named on the command line and apply flag overrides."""
    if args.config is not None:
        config = parse_config(load_config_text(args.config), base_dir=args.config.resolve().parent)
    else:
        config = parse_config(load_material_config(args.material or "sapphire"), base_dir=ASSETS_DIR)

    if args.velocity is not None:
        if not args.velocity > 0:
            raise ConfigError(f"must be positive, got {args.velocity!r}", key="--velocity")
        config = replace(config, velocity=args.velocity)
    if args.threads is not None and args.threads < 1:
        raise ConfigError(f"must be >= 1, got {args.threads}", key="--threads")

    output = config.output
    overrides = {
        "path": args.output,
        "plot_script": args.plot_script,
        "png": args.png,
        "threads": args.threads,
    }
    output = replace(output, **{key: value for key, value in overrides.items() if value is not None})
    return replace(config, output=output)


def _log_level(verbosity: int) -> int:
    if verbosity >= 2:
        return logging.DEBUG
    if verbosity == 1:
        return logging.INFO
    return logging.WARNING


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=_log_level(args.verbose), format=settings.LOG_FORMAT)

    try:
        config = resolve_config(args)
        return Lab(config).run(args.subcommand)
    except (ConfigError, ValidationError, DegenerateFitError) as exc:
        logging.error("Configuration error: %s", exc)
        return settings.EXIT_CONFIG_ERROR
    except (ConvergenceError, RootCollisionError, AiryDomainError, StateAboveBarrierError) as exc:
        logging.error("Solver failure: %s", exc)
        return settings.EXIT_CONVERGENCE_FAILURE
    except PartialSweepError as exc:
        logging.error("%s", exc)
        return settings.EXIT_PARTIAL_SWEEP
    except CentrifugalError as exc:
        logging.error("%s", exc)
        return settings.EXIT_CONVERGENCE_FAILURE


def run(argv: List[str] | None = None) -> None:
    raise SystemExit(main(argv))
