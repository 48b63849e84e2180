from __future__ import annotations

import pytest

from assets.loaders import load_material_config
from assets.paths import ASSETS_DIR
from config import constants
from ui.config_file import RunConfig, parse_config
from world.errors import ConfigError

MINIMAL = """\
[mirror]
R_cm = 2.5
L_cm = 5
U0_neV = 150

[beam]
v_mps = 1000
"""


def test_bundled_sapphire_configuration():
    config = parse_config(load_material_config("sapphire"), base_dir=ASSETS_DIR)
    assert config.mirror.material_label == "sapphire"
    assert config.mirror.radius_R == pytest.approx(0.025)
    assert config.velocity == 1000.0
    assert config.n_max == 8
    assert config.sweep.reference_velocity == 1200.0
    assert config.sweep.steps == 121
    assert config.roughness.amplitude_br == pytest.approx(1e-9)
    assert config.roughness.mean_final_energy_Ef is None
    assert config.scaling.U0_list == (30.0, 60.0, 120.0, 150.0, 300.0)
    assert config.population.mode == "equal"


def test_minimal_configuration_uses_defaults():
    config = parse_config(MINIMAL)
    assert config.mirror.fermi_potential_U0 == 150.0
    assert config.sweep is None and config.roughness is None
    assert config.output.threads == 1
    config.require("resonances")
    with pytest.raises(ConfigError, match=r"\[sweep\]"):
        config.require("sweep")


def test_material_preset_with_override():
    config = parse_config("[mirror]\nmaterial = silicon\nU0_neV = 60\n")
    U0, R_cm, _ = constants.MATERIALS["silicon"]
    assert config.mirror.fermi_potential_U0 == 60.0
    assert config.mirror.radius_R == pytest.approx(R_cm * constants.CM)
    assert U0 == 54.0


def test_comments_and_auto_energy():
    text = MINIMAL + "\n# roughness\n[roughness]\nbr_nm = 2 ; rms\nlr_um = 1\nEf_neV = auto\n"
    config = parse_config(text)
    assert config.roughness.amplitude_br == pytest.approx(2e-9)
    assert config.roughness.mean_final_energy_Ef is None


def test_overlap_population_reads_band_height():
    config = parse_config(MINIMAL + "[population]\nmode = overlap\nh_um = 0.1\n")
    assert config.population.band_height_h == pytest.approx(1e-7)


def test_relative_paths_resolve_against_the_config_directory(tmp_path):
    config = parse_config(MINIMAL + "[output]\npath = out/res.csv\nthreads = 3\n", base_dir=tmp_path)
    assert config.output.path == tmp_path / "out" / "res.csv"
    assert config.output.threads == 3


def test_spectrum_is_loaded_from_the_bundled_table():
    config = parse_config(MINIMAL + "[roughness]\nbr_nm = 0\nlr_um = 1\nspectrum = roughness_spectrum.dat\n", base_dir=ASSETS_DIR)
    assert config.roughness.spectrum.mean_square_amplitude == pytest.approx(1e-18, rel=1e-6)


def test_missing_spectrum_file_is_a_config_error(tmp_path):
    text = MINIMAL + "[roughness]\nbr_nm = 1\nlr_um = 1\nspectrum = typo.dat\n"
    with pytest.raises(ConfigError) as excinfo:
        parse_config(text, base_dir=tmp_path)
    assert excinfo.value.key == "spectrum"
    assert excinfo.value.line == 11


@pytest.mark.parametrize(
    "text, line, key",
    [
        (MINIMAL + "colour = red\n", 8, "colour"),
        (MINIMAL.replace("U0_neV = 150", "U0_neV = lots"), 4, "U0_neV"),
        (MINIMAL.replace("U0_neV = 150", "U0_neV = -3"), 4, "U0_neV"),
        (MINIMAL.replace("L_cm = 5", "L_cm = 50"), 3, "L_cm"),
        (MINIMAL.replace("v_mps = 1000", "v_mps = 0"), 7, "v_mps"),
        (MINIMAL + "[sweep]\nv_min_mps = 900\nv_max_mps = 800\n", 10, "v_max_mps"),
    ],
)
def test_errors_point_at_the_offending_line(text, line, key):
    with pytest.raises(ConfigError) as excinfo:
        parse_config(text)
    assert excinfo.value.line == line
    assert excinfo.value.key == key
    assert f"line {line}" in str(excinfo.value)


def test_unknown_section_and_missing_header():
    with pytest.raises(ConfigError) as excinfo:
        parse_config(MINIMAL + "[laser]\npower = 1\n")
    assert excinfo.value.line == 8
    with pytest.raises(ConfigError) as excinfo:
        parse_config("R_cm = 2.5\n")
    assert excinfo.value.line == 1


def test_duplicate_key_is_rejected():
    with pytest.raises(ConfigError) as excinfo:
        parse_config(MINIMAL + "v_mps = 1200\n")
    assert excinfo.value.key == "v_mps"


def test_missing_mirror_value():
    with pytest.raises(ConfigError) as excinfo:
        parse_config("[mirror]\nR_cm = 2.5\nL_cm = 5\n")
    assert excinfo.value.key == "U0_neV"


def test_unknown_material():
    with pytest.raises(ConfigError) as excinfo:
        parse_config("[mirror]\nmaterial = graphite\n")
    assert excinfo.value.line == 2


def test_require_lists_each_subcommand():
    empty = RunConfig()
    empty.require("verify")
    with pytest.raises(ConfigError):
        empty.require("scales")
    with pytest.raises(ConfigError):
        empty.require("levitate")
