"""Utilities for locating bundled configurations and output files."""

from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent
ASSETS_DIR = BASE_DIR / "materials"
OUTPUT_DIR = BASE_DIR / "output"

EXAMPLE_SPECTRUM_PATH = ASSETS_DIR / "roughness_spectrum.dat"


def material_config_path(name: str) -> Path:
    return ASSETS_DIR / f"{name}.ini"
