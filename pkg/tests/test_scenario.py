import dataclasses
import math

import numpy as np
import pytest

from uavrf.patterns import Rect, Subregion, constant_pattern, pattern_preset
from uavrf.scenario import (
    Scenario,
    ScenarioError,
    default_scenario,
    dump_scenario,
    load_scenario,
    parse_scenario,
    reference_scenario,
    slot_densities,
)


def test_empty_text_gives_defaults():
    sc = parse_scenario("")
    assert sc == default_scenario()
    assert sc.env.name == "urban"
    assert sc.radio.noise_density == 5e-15
    assert sc.horizon_s == 24 * 3600.0
    assert sc.slot_s == 600.0
    assert len(sc.subregions) == 1
    assert sc.subregions[0].rect == Rect(0.0, 0.0, 1000.0, 1000.0)
    # the S/(pi E_b) = 1 normalization
    assert sc.subregions[0].area / (math.pi * sc.energy.battery_j) == pytest.approx(1.0)


def test_roundtrip_reference_scenario():
    sc = reference_scenario()
    assert parse_scenario(dump_scenario(sc)) == sc


def test_roundtrip_default_scenario():
    sc = default_scenario()
    assert parse_scenario(dump_scenario(sc)) == sc


def test_roundtrip_from_file(tmp_path):
    sc = reference_scenario(seed=777)
    path = tmp_path / "scenario.cfg"
    path.write_text(dump_scenario(sc))
    assert load_scenario(str(path)) == sc


def test_overlapping_subregions_rejected():
    text = """
[scenario]
name = bad

[subregion A]
rect = 0 0 600 1000
pattern = preset:E

[subregion B]
rect = 500 0 500 1000
pattern = preset:R
"""
    with pytest.raises(ScenarioError, match="overlap"):
        parse_scenario(text)


def test_subregion_outside_bounds_rejected():
    text = """
[scenario]
area = 0 0 1000 1000

[subregion A]
rect = 600 0 500 1000
pattern = preset:E
"""
    with pytest.raises(ScenarioError, match="outside"):
        parse_scenario(text)


def test_horizon_must_be_slot_multiple():
    with pytest.raises(ScenarioError, match="whole number"):
        dataclasses.replace(default_scenario(), horizon_s=1000.0)


def test_band_validation():
    with pytest.raises(ScenarioError, match="band"):
        dataclasses.replace(default_scenario(), density_bands=((0.0, 1.0),))


def test_parse_error_reports_line():
    with pytest.raises(ScenarioError, match="parse error"):
        parse_scenario("[scenario\nname = broken\n")


def test_unknown_pattern_ref():
    text = """
[subregion A]
rect = 0 0 1000 1000
pattern = magic:Q
"""
    with pytest.raises(ScenarioError):
        parse_scenario(text)


def test_banded_densities_positive_and_shaped():
    sc = reference_scenario()
    lams = slot_densities(sc)
    assert lams.shape == (2, sc.n_slots)
    assert np.all(lams >= 1e-7 - 1e-20)
    assert np.all(lams <= 1e-6 + 1e-20)
    assert lams.min() < 2e-7 and lams.max() > 8e-7  # the band is exercised


def test_raw_densities_match_pattern(radio):
    sc = default_scenario()
    lams = slot_densities(sc)
    from uavrf.patterns import user_density

    for k in (0, 10, 100):
        expected = user_density(sc.subregions[0], k * sc.slot_s, sc.radio)
        assert lams[0, k] == pytest.approx(expected, rel=1e-12)


def test_start_offset_shifts_densities():
    sc = reference_scenario()
    shifted = dataclasses.replace(sc, start_s=6 * 3600.0)
    base = slot_densities(sc)
    moved = slot_densities(shifted)
    k = int(6 * 3600.0 / sc.slot_s)
    assert np.allclose(moved[:, 0], base[:, k])


def test_explicit_densities_override():
    sc = dataclasses.replace(
        default_scenario(),
        explicit_densities=((1.0, 2.0, 3.0),),
        horizon_s=3 * 600.0,
    )
    assert np.allclose(slot_densities(sc), [[1.0, 2.0, 3.0]])
    wrapped = dataclasses.replace(sc, horizon_s=5 * 600.0)
    assert np.allclose(slot_densities(wrapped), [[1.0, 2.0, 3.0, 1.0, 2.0]])


def test_explicit_densities_validation():
    with pytest.raises(ScenarioError):
        dataclasses.replace(default_scenario(), explicit_densities=((1.0,), (2.0,)))
    with pytest.raises(ScenarioError):
        dataclasses.replace(default_scenario(), explicit_densities=((-1.0,),))


def test_with_mobility_power():
    sc = reference_scenario().with_mobility_power(7.5)
    assert sc.energy.p_horizontal == sc.energy.p_ascend == sc.energy.p_descend == 7.5


def test_custom_environment_section():
    text = """
[scenario]
name = custom-env

[environment]
a = 5.0
b = 0.3
eta_los = 0.5
eta_nlos = 12.0
"""
    sc = parse_scenario(text)
    assert sc.env.a == 5.0 and sc.env.eta_nlos == 12.0
    assert sc.env.name == "custom"


def test_roundtrip_with_start_offset():
    sc = dataclasses.replace(reference_scenario(), start_s=4 * 3600.0)
    assert parse_scenario(dump_scenario(sc)) == sc


def test_pattern_file_reference_relative_path(tmp_path):
    from uavrf.patterns import dump_pattern

    pattern = pattern_preset("T")
    (tmp_path / "custom.pat").write_text(dump_pattern(pattern))
    (tmp_path / "sc.cfg").write_text(
        """
[scenario]
name = file-pattern

[subregion Z]
rect = 0 0 1000 1000
pattern = file:custom.pat
density_band = 1e-7 1e-6
"""
    )
    sc = load_scenario(str(tmp_path / "sc.cfg"))
    got = sc.subregions[0].pattern
    assert got.scale == pattern.scale
    assert set(got.coefficients) == set(pattern.coefficients)
    for k in pattern.coefficients:
        assert got.coefficients[k] == pytest.approx(pattern.coefficients[k], rel=1e-12)
