"""Scenario definition: the complete, immutable input of one experiment.

Scenarios are plain YAML documents. Loading is strict: unknown keys are
rejected and every violated bound is reported with the full key path, so a
typo in a config fails loudly instead of silently changing an experiment.
Two presets ship with the package: ``paper-basic`` (all off-highway offsets
zero) and ``paper-calibrated`` (23 km workshop offset, which moves the
cancellation-penalty onset near alarm km 190).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import yaml

from .geometry import RouteGeometry, SpeedProfile, Workshop
from .impacts import MaintenanceParams
from .risk import AvailabilityUtility
from .rul import GammaParams, GammaRul


class ScenarioError(ValueError):
    """A scenario file failed to parse or validate."""


@dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = 1e-8
    max_panels: int = 2**20

    def __post_init__(self):
        if not 0 < self.rel_tol < 1:
            raise ValueError(f"rel_tol must be in (0, 1), got {self.rel_tol}")
        if self.max_panels < 8:
            raise ValueError(f"max_panels must be >= 8, got {self.max_panels}")


@dataclass(frozen=True)
class Scenario:
    name: str
    geometry: RouteGeometry
    speeds: SpeedProfile
    maintenance: MaintenanceParams
    utility: AvailabilityUtility
    rul: GammaRul
    quadrature: QuadratureSettings = QuadratureSettings()
    grid_step: float = 1.0

    def __post_init__(self):
        if self.grid_step <= 0:
            raise ValueError(f"grid_step must be > 0, got {self.grid_step}")

    def with_alarm(self, alarm_position: float) -> Scenario:
        geometry = dataclasses.replace(self.geometry, alarm_position=alarm_position)
        return dataclasses.replace(self, geometry=geometry)

    def with_workshops(self, workshops: tuple[Workshop, ...]) -> Scenario:
        geometry = dataclasses.replace(self.geometry, workshops=tuple(workshops))
        return dataclasses.replace(self, geometry=geometry)

    def with_rul(self, rul: GammaRul) -> Scenario:
        return dataclasses.replace(self, rul=rul)

    def with_utility(self, utility: AvailabilityUtility) -> Scenario:
        return dataclasses.replace(self, utility=utility)

    def with_quadrature(self, settings: QuadratureSettings) -> Scenario:
        return dataclasses.replace(self, quadrature=settings)


class _Section:
    """A mapping view that tracks consumed keys and reports full paths."""

    def __init__(self, data, path: str):
        if not isinstance(data, dict):
            raise ScenarioError(f"{path or 'document'}: expected a mapping, got {type(data).__name__}")
        self.data = data
        self.path = path
        self.seen: set[str] = set()

    def _label(self, key: str) -> str:
        return f"{self.path}.{key}" if self.path else key

    def child(self, key: str) -> "_Section":
        return _Section(self.require(key), self._label(key))

    def require(self, key: str):
        if key not in self.data:
            raise ScenarioError(f"missing required key {self._label(key)!r}")
        self.seen.add(key)
        return self.data[key]

    def number(self, key: str, default=None) -> float:
        if default is not None and key not in self.data:
            return float(default)
        value = self.require(key)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ScenarioError(f"{self._label(key)}: expected a number, got {value!r}")
        return float(value)

    def integer(self, key: str, default=None) -> int:
        if default is not None and key not in self.data:
            return int(default)
        value = self.require(key)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ScenarioError(f"{self._label(key)}: expected an integer, got {value!r}")
        return value

    def string(self, key: str) -> str:
        value = self.require(key)
        if not isinstance(value, str):
            raise ScenarioError(f"{self._label(key)}: expected a string, got {value!r}")
        return value

    def finish(self):
        unknown = set(self.data) - self.seen
        if unknown:
            where = self.path or "document"
            raise ScenarioError(f"unknown key(s) in {where}: {', '.join(sorted(unknown))}")


def _build(section: _Section, factory, **kwargs):
    try:
        return factory(**kwargs)
    except ValueError as err:
        raise ScenarioError(f"{section.path or 'document'}: {err}") from err


def _parse_workshop(entry, path: str) -> Workshop:
    sec = _Section(entry, path)
    workshop = _build(
        sec,
        Workshop,
        label=sec.string("label"),
        highway_position=sec.number("highway_position_km"),
        offset=sec.number("offset_km", default=0.0),
    )
    sec.finish()
    return workshop


def _parse_gamma(sec: _Section, key: str) -> GammaParams:
    sub = sec.child(key)
    params = _build(sub, GammaParams, shape=sub.number("shape"), scale=sub.number("scale_h"))
    sub.finish()
    return params


def scenario_from_mapping(data: dict, *, name_fallback: str = "scenario") -> Scenario:
    root = _Section(data, "")
    name = root.string("name") if "name" in data else name_fallback
    root.seen.add("name")

    geo = root.child("geometry")
    raw_workshops = geo.require("workshops")
    if not isinstance(raw_workshops, list) or not raw_workshops:
        raise ScenarioError("geometry.workshops: expected a nonempty list")
    workshops = tuple(
        _parse_workshop(entry, f"geometry.workshops[{i}]") for i, entry in enumerate(raw_workshops)
    )
    geometry = _build(
        geo,
        RouteGeometry,
        highway_length=geo.number("highway_length_km"),
        workshops=workshops,
        customer_position=geo.number("customer_position_km"),
        customer_offset=geo.number("customer_offset_km", default=0.0),
        alarm_position=geo.number("alarm_position_km", default=0.0),
    )
    geo.finish()

    spd = root.child("speeds_kmh")
    speeds = _build(
        spd,
        SpeedProfile,
        normal=spd.number("normal"),
        tow_loaded=spd.number("tow_loaded"),
        tow_unloaded=spd.number("tow_unloaded"),
        workshop_reduced=spd.number("workshop_reduced"),
        workshop_normal=spd.number("workshop_normal"),
        customer_normal=spd.number("customer_normal"),
    )
    spd.finish()

    mnt = root.child("maintenance")
    maintenance = _build(
        mnt,
        MaintenanceParams,
        repair_time=mnt.number("repair_time_h"),
        breakdown_repair_time=mnt.number("breakdown_repair_time_h"),
        tow_scheduling_time=mnt.number("tow_scheduling_time_h"),
        repair_cost=mnt.number("repair_cost_eur"),
        breakdown_repair_cost=mnt.number("breakdown_repair_cost_eur"),
        tow_fixed_fee=mnt.number("tow_fixed_fee_eur"),
        tow_cost_per_km=mnt.number("tow_cost_per_km_eur"),
    )
    mnt.finish()

    util = root.child("availability_utility")
    utility = _build(
        util,
        AvailabilityUtility,
        grace_hours=util.number("grace_hours"),
        cancel_hours=util.number("cancel_hours"),
        cancel_penalty=util.number("cancel_penalty_eur"),
        hourly_rate=util.number("hourly_rate_eur", default=100.0),
    )
    util.finish()

    gam = root.child("rul_gamma")
    rul = GammaRul(
        workshop_reduced=_parse_gamma(gam, "workshop_reduced"),
        workshop_normal=_parse_gamma(gam, "workshop_normal"),
        customer_first=_parse_gamma(gam, "customer_first"),
    )
    gam.finish()

    if "quadrature" in data:
        quad = root.child("quadrature")
        settings = _build(
            quad,
            QuadratureSettings,
            rel_tol=quad.number("rel_tol", default=1e-8),
            max_panels=quad.integer("max_panels", default=2**20),
        )
        quad.finish()
    else:
        settings = QuadratureSettings()

    grid_step = root.number("grid_step_km", default=1.0)
    root.finish()

    try:
        return Scenario(
            name=name,
            geometry=geometry,
            speeds=speeds,
            maintenance=maintenance,
            utility=utility,
            rul=rul,
            quadrature=settings,
            grid_step=grid_step,
        )
    except ValueError as err:
        raise ScenarioError(str(err)) from err


def scenario_to_mapping(scenario: Scenario) -> dict:
    g = scenario.geometry
    m = scenario.maintenance
    u = scenario.utility
    return {
        "name": scenario.name,
        "geometry": {
            "highway_length_km": g.highway_length,
            "customer_position_km": g.customer_position,
            "customer_offset_km": g.customer_offset,
            "alarm_position_km": g.alarm_position,
            "workshops": [
                {
                    "label": w.label,
                    "highway_position_km": w.highway_position,
                    "offset_km": w.offset,
                }
                for w in g.workshops
            ],
        },
        "speeds_kmh": {
            "normal": scenario.speeds.normal,
            "tow_loaded": scenario.speeds.tow_loaded,
            "tow_unloaded": scenario.speeds.tow_unloaded,
            "workshop_reduced": scenario.speeds.workshop_reduced,
            "workshop_normal": scenario.speeds.workshop_normal,
            "customer_normal": scenario.speeds.customer_normal,
        },
        "maintenance": {
            "repair_time_h": m.repair_time,
            "breakdown_repair_time_h": m.breakdown_repair_time,
            "tow_scheduling_time_h": m.tow_scheduling_time,
            "repair_cost_eur": m.repair_cost,
            "breakdown_repair_cost_eur": m.breakdown_repair_cost,
            "tow_fixed_fee_eur": m.tow_fixed_fee,
            "tow_cost_per_km_eur": m.tow_cost_per_km,
        },
        "availability_utility": {
            "grace_hours": u.grace_hours,
            "cancel_hours": u.cancel_hours,
            "cancel_penalty_eur": u.cancel_penalty,
            "hourly_rate_eur": u.hourly_rate,
        },
        "rul_gamma": {
            "workshop_reduced": {
                "shape": scenario.rul.workshop_reduced.shape,
                "scale_h": scenario.rul.workshop_reduced.scale,
            },
            "workshop_normal": {
                "shape": scenario.rul.workshop_normal.shape,
                "scale_h": scenario.rul.workshop_normal.scale,
            },
            "customer_first": {
                "shape": scenario.rul.customer_first.shape,
                "scale_h": scenario.rul.customer_first.scale,
            },
        },
        "quadrature": {
            "rel_tol": scenario.quadrature.rel_tol,
            "max_panels": scenario.quadrature.max_panels,
        },
        "grid_step_km": scenario.grid_step,
    }


def list_presets() -> list[str]:
    root = resources.files("roadcall") / "presets"
    return sorted(p.name.removesuffix(".yaml") for p in root.iterdir() if p.name.endswith(".yaml"))


def load_scenario(source: str | Path) -> Scenario:
    """Load a scenario from a YAML file path or a bundled preset name."""
    path = Path(source)
    if path.exists():
        text = path.read_text()
        label = path.stem
    else:
        candidate = resources.files("roadcall") / "presets" / f"{source}.yaml"
        if not candidate.is_file():
            raise ScenarioError(
                f"{source!r} is neither a file nor a preset; presets: {', '.join(list_presets())}"
            )
        text = candidate.read_text()
        label = str(source)
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as err:
        raise ScenarioError(f"cannot parse {label}: {err}") from err
    return scenario_from_mapping(data, name_fallback=label)


def save_scenario(scenario: Scenario, path: str | Path) -> None:
    Path(path).write_text(yaml.safe_dump(scenario_to_mapping(scenario), sort_keys=False))
