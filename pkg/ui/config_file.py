"""Parsing of the [section] key=value run configuration."""

from __future__ import annotations

import configparser
import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Dict, List, Tuple

from assets.loaders import load_roughness_spectrum
from config import constants, settings, tuning
from entities.curves import PopulationModel
from systems.roughness import EF_MODELS
from world.errors import ConfigError, ValidationError
from world.mirror import MirrorSpec, RoughnessSpec

SUBCOMMANDS = ("scales", "resonances", "lifetimes", "sweep", "rough-sweep", "scaling-check", "verify")


def _float_list(text: str) -> List[float]:
    return [float(item) for item in text.split(",") if item.strip()]


def _energy_or_auto(text: str) -> float | None:
    return None if text.strip().lower() == "auto" else float(text)


SCHEMA: Dict[str, Dict[str, Callable[[str], object]]] = {
    "mirror": {"material": str, "label": str, "R_cm": float, "L_cm": float, "U0_neV": float},
    "beam": {"v_mps": float, "n_max": int},
    "sweep": {"v_min_mps": float, "v_max_mps": float, "steps": int, "reference_mps": float, "n_states": int},
    "roughness": {"br_nm": float, "lr_um": float, "Ef_neV": _energy_or_auto, "spectrum": str},
    "population": {"mode": str, "h_um": float},
    "output": {"path": str, "plot_script": str, "png": str, "threads": int},
    "scaling": {"U0_list_neV": _float_list, "ef_model": str},
}

# dataclass field -> config key, for validation messages
FIELD_KEYS = {
    "radius_R": "R_cm",
    "length_L": "L_cm",
    "fermi_potential_U0": "U0_neV",
    "velocity_v": "v_mps",
    "amplitude_br": "br_nm",
    "correlation_length_lr": "lr_um",
    "mean_final_energy_Ef": "Ef_neV",
    "band_height_h": "h_um",
    "mode": "mode",
    "material": "material",
}


@dataclass(frozen=True)
class SweepParams:
    v_min: float
    v_max: float
    steps: int
    reference_velocity: float
    n_states: int = 2


@dataclass(frozen=True)
class ScalingParams:
    U0_list: Tuple[float, ...]
    ef_model: str = "roughness-quantum"


@dataclass(frozen=True)
class OutputOptions:
    path: Path | None = None
    plot_script: Path | None = None
    png: Path | None = None
    threads: int = settings.DEFAULT_THREADS


@dataclass(frozen=True)
class RunConfig:
    mirror: MirrorSpec | None = None
    velocity: float | None = None
    n_max: int = tuning.DEFAULT_N_MAX
    sweep: SweepParams | None = None
    roughness: RoughnessSpec | None = None
    population: PopulationModel = field(default_factory=PopulationModel)
    scaling: ScalingParams | None = None
    output: OutputOptions = field(default_factory=OutputOptions)

    def require(self, subcommand: str) -> None:
        """Check that the parameter groups a subcommand reads are present."""
        needs = {
            "scales": ("mirror", "velocity"),
            "resonances": ("mirror", "velocity"),
            "lifetimes": ("mirror", "sweep"),
            "sweep": ("mirror", "sweep"),
            "rough-sweep": ("mirror", "sweep", "roughness"),
            "scaling-check": ("mirror", "roughness", "scaling"),
            "verify": (),
        }
        if subcommand not in needs:
            raise ConfigError(f"unknown subcommand '{subcommand}'")
        sections = {"mirror": "mirror", "velocity": "beam", "sweep": "sweep", "roughness": "roughness", "scaling": "scaling"}
        for group in needs[subcommand]:
            if getattr(self, group) is None:
                raise ConfigError(f"'{subcommand}' needs a [{sections[group]}] section")


def _line_of(text: str, section: str, key: str | None = None) -> int | None:
    current = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        header = re.fullmatch(r"\[([^\]]+)\]", line)
        if header:
            current = header.group(1).strip()
            if key is None and current == section:
                return number
            continue
        if current == section and key is not None and re.match(rf"{re.escape(key)}\s*[=:]", line):
            return number
    return None


def _line_of_key(text: str, key: str) -> int | None:
    for number, raw in enumerate(text.splitlines(), start=1):
        if re.match(rf"\s*{re.escape(key)}\s*[=:]", raw):
            return number
    return None


def _read(text: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"), default_section="__none__")
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.MissingSectionHeaderError as exc:
        raise ConfigError("expected a [section] header", line=exc.lineno) from None
    except configparser.DuplicateOptionError as exc:
        raise ConfigError(f"duplicate key in [{exc.section}]", line=exc.lineno, key=exc.option) from None
    except configparser.DuplicateSectionError as exc:
        raise ConfigError(f"duplicate section [{exc.section}]", line=exc.lineno) from None
    except configparser.ParsingError as exc:
        line, content = exc.errors[0]
        raise ConfigError(f"cannot parse {content!r}", line=line) from None
    return parser


def _typed(parser: configparser.ConfigParser, text: str) -> Dict[str, Dict[str, object]]:
    values: Dict[str, Dict[str, object]] = {}
    for section in parser.sections():
        if section not in SCHEMA:
            raise ConfigError(f"unknown section [{section}]", line=_line_of(text, section))
        schema = SCHEMA[section]
        values[section] = {}
        for key, raw in parser.items(section):
            line = _line_of(text, section, key)
            if key not in schema:
                raise ConfigError(f"unknown key in [{section}]", line=line, key=key)
            try:
                values[section][key] = schema[key](raw)
            except ValueError:
                raise ConfigError(f"invalid value {raw!r}", line=line, key=key) from None
    return values


def _require(group: Dict[str, object], section: str, key: str) -> object:
    if key not in group:
        raise ConfigError(f"missing required key in [{section}]", key=key)
    return group[key]


def _positive(value: float, key: str) -> float:
    if not value > 0:
        raise ConfigError(f"must be positive, got {value!r}", key=key)
    return value


def _mirror(group: Dict[str, object]) -> MirrorSpec:
    name = group.get("material")
    if name is not None:
        if name not in constants.MATERIALS:
            raise ConfigError(f"unknown material '{name}'", key="material")
        U0_neV, R_cm, L_cm = constants.MATERIALS[name]
    else:
        U0_neV = R_cm = L_cm = None
    R_cm = group.get("R_cm", R_cm)
    L_cm = group.get("L_cm", L_cm)
    U0_neV = group.get("U0_neV", U0_neV)
    for key, value in (("R_cm", R_cm), ("L_cm", L_cm), ("U0_neV", U0_neV)):
        if value is None:
            raise ConfigError("missing required key in [mirror]", key=key)
        _positive(value, key)
    label = group.get("label", name or "custom")
    return MirrorSpec.from_units(R_cm, L_cm, U0_neV, label)


def _roughness(group: Dict[str, object], base_dir: Path | None) -> RoughnessSpec:
    br_nm = _require(group, "roughness", "br_nm")
    if br_nm < 0:
        raise ConfigError(f"must be >= 0, got {br_nm!r}", key="br_nm")
    lr_um = _positive(_require(group, "roughness", "lr_um"), "lr_um")
    Ef_neV = group.get("Ef_neV")
    if Ef_neV is not None:
        _positive(Ef_neV, "Ef_neV")
    spec = RoughnessSpec.from_units(br_nm, lr_um, Ef_neV)
    if "spectrum" in group:
        path = Path(group["spectrum"])
        if not path.is_absolute() and base_dir is not None:
            path = base_dir / path
        spec = replace(spec, spectrum=load_roughness_spectrum(path))
    return spec


def _sweep(group: Dict[str, object]) -> SweepParams:
    v_min = _positive(_require(group, "sweep", "v_min_mps"), "v_min_mps")
    v_max = _positive(_require(group, "sweep", "v_max_mps"), "v_max_mps")
    if not v_min < v_max:
        raise ConfigError("must exceed v_min_mps", key="v_max_mps")
    steps = group.get("steps", 121)
    if steps < 2:
        raise ConfigError(f"must be >= 2, got {steps}", key="steps")
    reference = group.get("reference_mps", v_min)
    if not v_min <= reference <= v_max:
        raise ConfigError("must lie inside [v_min_mps, v_max_mps]", key="reference_mps")
    n_states = group.get("n_states", 2)
    if n_states < 1:
        raise ConfigError(f"must be >= 1, got {n_states}", key="n_states")
    return SweepParams(v_min, v_max, steps, reference, n_states)


def _output(group: Dict[str, object], base_dir: Path | None) -> OutputOptions:
    def located(key: str) -> Path | None:
        if key not in group:
            return None
        path = Path(group[key])
        return path if path.is_absolute() or base_dir is None else base_dir / path

    threads = group.get("threads", settings.DEFAULT_THREADS)
    if threads < 1:
        raise ConfigError(f"must be >= 1, got {threads}", key="threads")
    return OutputOptions(located("path"), located("plot_script"), located("png"), threads)


def parse_config(text: str, base_dir: Path | None = None) -> RunConfig:
    """Parse and validate a run configuration; relative paths resolve against ``base_dir``."""
    values = _typed(_read(text), text)
    try:
        mirror = _mirror(values["mirror"]) if "mirror" in values else None

        beam = values.get("beam", {})
        velocity = _positive(beam["v_mps"], "v_mps") if "v_mps" in beam else None
        n_max = beam.get("n_max", tuning.DEFAULT_N_MAX)
        if n_max < 1:
            raise ConfigError(f"must be >= 1, got {n_max}", key="n_max")

        population_group = values.get("population", {})
        h_um = population_group.get("h_um")
        population = PopulationModel(
            population_group.get("mode", "equal"),
            None if h_um is None else h_um * constants.UM,
        )

        scaling = None
        if "scaling" in values:
            group = values["scaling"]
            ef_model = group.get("ef_model", "roughness-quantum")
            if ef_model not in EF_MODELS:
                raise ConfigError(f"expected one of {EF_MODELS}", key="ef_model")
            scaling = ScalingParams(tuple(_require(group, "scaling", "U0_list_neV")), ef_model)

        return RunConfig(
            mirror=mirror,
            velocity=velocity,
            n_max=n_max,
            sweep=_sweep(values["sweep"]) if "sweep" in values else None,
            roughness=_roughness(values["roughness"], base_dir) if "roughness" in values else None,
            population=population,
            scaling=scaling,
            output=_output(values.get("output", {}), base_dir),
        )
    except ValidationError as exc:
        key = FIELD_KEYS.get(exc.field, exc.field)
        raise ConfigError(exc.detail, line=_line_of_key(text, key), key=key) from None
    except ConfigError as exc:
        if exc.line is None and exc.key is not None:
            raise ConfigError(exc.detail, line=_line_of_key(text, exc.key), key=exc.key) from None
        raise
