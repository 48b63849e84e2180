"""Loading helpers for configuration files, material presets and roughness spectra."""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from assets.paths import material_config_path
from config import constants
from world.errors import ConfigError, ValidationError
from world.mirror import RoughnessSpectrum


def load_config_text(path: str | Path) -> str:
    target = Path(path)
    try:
        return target.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"configuration file not found: {target}") from None


def load_material_config(name: str) -> str:
    """Bundled configuration for a material, rebuilt from the presets when the file is absent."""
    path = material_config_path(name)
    if path.exists():
        return path.read_text(encoding="utf-8")
    try:
        U0_neV, R_cm, L_cm = constants.MATERIALS[name]
    except KeyError:
        raise ConfigError(f"unknown material '{name}'", key="material") from None
    logging.warning("Material config not found at %s, using built-in preset for %s", path, name)
    v_min, v_max = constants.SWEEP_WINDOWS[name]
    return (
        f"[mirror]\nmaterial = {name}\nR_cm = {R_cm}\nL_cm = {L_cm}\nU0_neV = {U0_neV}\n\n"
        f"[sweep]\nv_min_mps = {v_min}\nv_max_mps = {v_max}\nsteps = 121\n"
        f"reference_mps = {constants.REFERENCE_VELOCITIES[name]}\n"
    )


def load_roughness_spectrum(path: str | Path) -> RoughnessSpectrum:
    """Two-column table (omega in rad/s, f(omega) in m^2 s)."""
    target = Path(path)
    if not target.is_file():
        raise ConfigError(f"roughness spectrum not found: {target}", key="spectrum")
    try:
        table = np.loadtxt(target, dtype=float, comments="#", ndmin=2)
    except ValueError as exc:
        raise ConfigError(f"cannot read roughness spectrum {target}: {exc}", key="spectrum") from None
    if table.shape[1] != 2:
        raise ConfigError(f"roughness spectrum {target} must have exactly two columns", key="spectrum")
    try:
        return RoughnessSpectrum(table[:, 0], table[:, 1])
    except ValidationError as exc:
        raise ConfigError(str(exc), key="spectrum") from None
