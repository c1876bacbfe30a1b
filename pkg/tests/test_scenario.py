import copy

import pytest
import yaml

from roadcall import (
    QuadratureSettings,
    Scenario,
    ScenarioError,
    list_presets,
    load_scenario,
    save_scenario,
)
from roadcall.scenario import scenario_from_mapping, scenario_to_mapping


def test_presets_available():
    assert list_presets() == ["paper-basic", "paper-calibrated"]


def test_basic_preset_values(basic):
    assert basic.speeds.normal == 80.0
    assert basic.speeds.tow_loaded == 30.0
    assert basic.maintenance.breakdown_repair_cost == 1000.0
    assert basic.maintenance.tow_fixed_fee == 75.0
    assert basic.utility.cancel_penalty == 2000.0
    assert basic.rul.workshop_reduced.shape == 5.0
    assert basic.rul.workshop_reduced.scale == 2.0
    assert basic.rul.workshop_normal == basic.rul.customer_first
    assert basic.geometry.workshops[0].offset == 0.0
    assert basic.quadrature == QuadratureSettings(rel_tol=1e-8, max_panels=2**20)


def test_calibrated_differs_only_in_offset(basic, calibrated):
    assert calibrated.geometry.workshops[0].offset == 23.0
    assert calibrated.speeds == basic.speeds
    assert calibrated.maintenance == basic.maintenance
    assert calibrated.utility == basic.utility
    assert calibrated.rul == basic.rul


def test_round_trip(tmp_path, calibrated):
    path = tmp_path / "scenario.yaml"
    save_scenario(calibrated, path)
    assert load_scenario(path) == calibrated


def test_load_by_path(tmp_path, basic):
    path = tmp_path / "custom.yaml"
    save_scenario(basic, path)
    loaded = load_scenario(path)
    assert loaded == basic


def test_unknown_source_lists_presets():
    with pytest.raises(ScenarioError, match="paper-basic"):
        load_scenario("no-such-preset")


def test_parse_error_names_file(tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("geometry: [unclosed")
    with pytest.raises(ScenarioError, match="broken"):
        load_scenario(path)


@pytest.fixture()
def mapping(basic):
    return scenario_to_mapping(basic)


def test_unknown_key_rejected(mapping):
    data = copy.deepcopy(mapping)
    data["speeds_kmh"]["warp"] = 9000.0
    with pytest.raises(ScenarioError, match="speeds_kmh.*warp"):
        scenario_from_mapping(data)


def test_unknown_top_level_key_rejected(mapping):
    data = copy.deepcopy(mapping)
    data["extra_section"] = {}
    with pytest.raises(ScenarioError, match="extra_section"):
        scenario_from_mapping(data)


def test_missing_penalty_named(mapping):
    data = copy.deepcopy(mapping)
    del data["availability_utility"]["cancel_penalty_eur"]
    with pytest.raises(ScenarioError, match="cancel_penalty_eur"):
        scenario_from_mapping(data)


def test_tow_speed_bound_reported(mapping):
    data = copy.deepcopy(mapping)
    data["speeds_kmh"]["tow_loaded"] = 100.0
    with pytest.raises(ScenarioError, match="tow_loaded.*tow_unloaded"):
        scenario_from_mapping(data)


def test_non_numeric_value_rejected(mapping):
    data = copy.deepcopy(mapping)
    data["maintenance"]["repair_cost_eur"] = "free"
    with pytest.raises(ScenarioError, match="repair_cost_eur"):
        scenario_from_mapping(data)


def test_empty_workshops_rejected(mapping):
    data = copy.deepcopy(mapping)
    data["geometry"]["workshops"] = []
    with pytest.raises(ScenarioError, match="workshops"):
        scenario_from_mapping(data)


def test_workshop_bound_reported_with_path(mapping):
    data = copy.deepcopy(mapping)
    data["geometry"]["workshops"][0]["offset_km"] = -2.0
    with pytest.raises(ScenarioError, match=r"workshops\[0\]"):
        scenario_from_mapping(data)


def test_grid_step_validated(mapping):
    data = copy.deepcopy(mapping)
    data["grid_step_km"] = 0.0
    with pytest.raises(ScenarioError, match="grid_step"):
        scenario_from_mapping(data)


def test_quadrature_section_optional(mapping):
    data = copy.deepcopy(mapping)
    del data["quadrature"]
    assert scenario_from_mapping(data).quadrature == QuadratureSettings()


def test_yaml_is_flat_and_readable(basic):
    # the serialised form must parse back as plain YAML scalars/mappings
    text = yaml.safe_dump(scenario_to_mapping(basic))
    assert "!!python" not in text


def test_with_helpers_do_not_mutate(basic):
    shifted = basic.with_alarm(123.0)
    assert basic.geometry.alarm_position == 0.0
    assert shifted.geometry.alarm_position == 123.0
    assert isinstance(shifted, Scenario)
