"""Deterministic impact models: delivery-delay hours and maintenance euros.

Each decision yields, for every possible breakdown time, an availability
loss (actual minus planned delivery time) and a maintenance cost (workshop
bill plus tow fee). Both are exposed as piecewise profiles over the
breakdown window so the risk engine can integrate them against the RUL
density, and as plain per-time queries.

Conventions baked in here:

* For the workshop-bound decisions the tow distance is the remaining route
  distance frozen at the alarm instant, ``d0 - v*t``; the nearest workshop
  is not re-evaluated mid-drive.
* For customer-first the breakdown position is re-queried, with the truck's
  highway position capped at the customer's access point once reached (also
  after the delivery), matching the kinematics in :mod:`roadcall.geometry`.
* A breakdown after the delivery still incurs the tow fee from the
  post-delivery position, but no availability loss.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable

import numpy as np

from .decisions import Decision, Impact
from .geometry import time_to_customer, time_to_workshop

if TYPE_CHECKING:
    from .scenario import Scenario

_T_EPS = 1e-9


@dataclass(frozen=True)
class MaintenanceParams:
    """Workshop times/costs and tow-service pricing (hours, EUR, EUR/km)."""

    repair_time: float
    breakdown_repair_time: float
    tow_scheduling_time: float
    repair_cost: float
    breakdown_repair_cost: float
    tow_fixed_fee: float
    tow_cost_per_km: float

    def __post_init__(self):
        for name in (
            "repair_time",
            "breakdown_repair_time",
            "tow_scheduling_time",
            "repair_cost",
            "breakdown_repair_cost",
            "tow_fixed_fee",
            "tow_cost_per_km",
        ):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)}")
        if self.breakdown_repair_time < self.repair_time:
            raise ValueError(
                f"breakdown_repair_time ({self.breakdown_repair_time}) must be >= "
                f"repair_time ({self.repair_time})"
            )
        if self.breakdown_repair_cost < self.repair_cost:
            raise ValueError(
                f"breakdown_repair_cost ({self.breakdown_repair_cost}) must be >= "
                f"repair_cost ({self.repair_cost})"
            )


@dataclass(frozen=True)
class LossSegment:
    """One smooth piece of a breakdown-loss profile on (start, end]."""

    start: float
    end: float
    value: Callable

    def __post_init__(self):
        if self.end < self.start:
            raise ValueError(f"segment end {self.end} before start {self.start}")


@dataclass(frozen=True)
class LossProfile:
    """Piecewise breakdown loss plus the no-breakdown value for one impact."""

    decision: Decision
    impact: Impact
    horizon: float
    segments: tuple[LossSegment, ...]
    no_breakdown: float

    def at(self, t):
        """Breakdown loss at time(s) ``t`` in [0, horizon]."""
        t = np.asarray(t, dtype=float)
        if np.any(t < -_T_EPS) or np.any(t > self.horizon + _T_EPS):
            raise ValueError(
                f"breakdown time outside [0, {self.horizon}] for decision "
                f"{self.decision.value}"
            )
        scalar = t.ndim == 0
        t = np.atleast_1d(np.clip(t, 0.0, self.horizon))
        starts = np.array([s.start for s in self.segments])
        # right-closed pieces: a boundary time belongs to the earlier segment
        idx = np.clip(np.searchsorted(starts, t, side="left") - 1, 0, len(self.segments) - 1)
        out = np.empty_like(t)
        for i, seg in enumerate(self.segments):
            mask = idx == i
            if np.any(mask):
                out[mask] = seg.value(t[mask])
        return float(out[0]) if scalar else out


@dataclass(frozen=True)
class ImpactOutcome:
    """Value of one impact for a decision under a concrete outcome."""

    impact: Impact
    decision: Decision
    breakdown_time: float | None  # None means no breakdown
    value: float


def evaluate_outcome(
    scenario: Scenario,
    decision: Decision,
    impact: Impact,
    breakdown_time: float | None = None,
) -> ImpactOutcome:
    """Impact value for one concrete outcome (a breakdown instant, or none)."""
    profile = loss_profile(scenario, decision, impact)
    if breakdown_time is None:
        value = profile.no_breakdown
    else:
        value = float(profile.at(breakdown_time))
    if impact is Impact.AVAILABILITY:
        value = max(0.0, value)
    return ImpactOutcome(
        impact=impact, decision=decision, breakdown_time=breakdown_time, value=value
    )


def _affine(slope: float, intercept: float) -> Callable:
    def fn(t):
        return intercept + slope * np.asarray(t, dtype=float)

    return fn


def _constant(value: float) -> Callable:
    def fn(t):
        return np.full_like(np.asarray(t, dtype=float), value)

    return fn


def _workshop_bound_plan(scenario: Scenario, decision: Decision):
    geom, speeds = scenario.geometry, scenario.speeds
    workshop, dist0 = geom.nearest_workshop(geom.alarm_position)
    v = speeds.for_decision(decision)
    return {
        "v": v,
        "dist0": dist0,
        "horizon": dist0 / v,
        "workshop_to_customer": geom.workshop_to_customer(workshop),
        "alarm_to_customer": geom.distance_to_customer(geom.alarm_position),
    }


def _customer_first_times(scenario: Scenario):
    geom, speeds = scenario.geometry, scenario.speeds
    v = speeds.customer_normal
    t_highway = abs(geom.customer_position - geom.alarm_position) / v
    t_customer = time_to_customer(geom, speeds)
    horizon = time_to_workshop(geom, speeds, Decision.CUSTOMER_FIRST)
    return v, t_highway, t_customer, horizon


def _moving_segment_times(scenario: Scenario, v: float, t_highway: float) -> list[float]:
    """Split times for the highway leg of customer-first, one per position
    where the nearest-workshop distance map kinks."""
    geom = scenario.geometry
    lo = min(geom.alarm_position, geom.customer_position)
    hi = max(geom.alarm_position, geom.customer_position)
    times = [abs(p - geom.alarm_position) / v for p in geom.distance_kink_positions(lo, hi)]
    return sorted(t for t in times if _T_EPS < t < t_highway - _T_EPS)


def _position_on_highway(scenario: Scenario, v: float):
    geom = scenario.geometry
    sign = 1.0 if geom.customer_position >= geom.alarm_position else -1.0

    def position(t):
        return geom.alarm_position + sign * v * np.asarray(t, dtype=float)

    return position


def _customer_first_segments(scenario: Scenario, v: float, t_highway: float, horizon: float):
    """Segment bounds for the customer-first drive, each with the workshop
    that is nearest throughout it.

    The bounds come from the nearest-distance kink positions, so the argmin
    workshop is constant on every segment; freezing it (via the segment
    midpoint) keeps each segment exactly affine, ties at the boundaries
    notwithstanding.
    """
    geom = scenario.geometry
    position = _position_on_highway(scenario, v)
    boundaries = [0.0, *_moving_segment_times(scenario, v, t_highway), t_highway, horizon]
    out = []
    for a, b in zip(boundaries, boundaries[1:]):
        if b - a <= _T_EPS:
            continue
        p_mid = float(position(min(0.5 * (a + b), t_highway)))
        workshop, _ = geom.nearest_workshop(p_mid)
        out.append((a, b, workshop))
    return out, position


def availability_profile(scenario: Scenario, decision: Decision) -> LossProfile:
    m = scenario.maintenance
    speeds = scenario.speeds
    tow_factor = 1.0 / speeds.tow_unloaded + 1.0 / speeds.tow_loaded

    if decision is not Decision.CUSTOMER_FIRST:
        plan = _workshop_bound_plan(scenario, decision)
        route_delta = (plan["workshop_to_customer"] - plan["alarm_to_customer"]) / speeds.normal
        nb = plan["horizon"] + m.repair_time + route_delta
        slope = 1.0 - plan["v"] * tow_factor
        intercept = (
            m.tow_scheduling_time
            + plan["dist0"] * tow_factor
            + m.breakdown_repair_time
            + route_delta
        )
        segments = (LossSegment(0.0, plan["horizon"], _affine(slope, intercept)),)
        return LossProfile(decision, Impact.AVAILABILITY, plan["horizon"], segments, nb)

    v, t_highway, t_customer, horizon = _customer_first_times(scenario)
    geom = scenario.geometry
    pieces, position = _customer_first_segments(scenario, v, t_highway, t_customer)

    segments = []
    for a, b, workshop in pieces:
        def en_route_loss(t, workshop=workshop):
            t = np.asarray(t, dtype=float)
            dist = workshop.distance_from(position(np.minimum(t, t_highway)))
            return (
                t
                + m.tow_scheduling_time
                + dist * tow_factor
                + m.breakdown_repair_time
                + geom.workshop_to_customer(workshop) / speeds.normal
                - t_customer
            )

        segments.append(LossSegment(a, b, en_route_loss))
    if horizon - t_customer > _T_EPS:
        segments.append(LossSegment(t_customer, horizon, _constant(0.0)))
    if not segments:  # alarm at the customer door: no pre-delivery window at all
        segments = [LossSegment(0.0, horizon, _constant(0.0))]
    return LossProfile(decision, Impact.AVAILABILITY, horizon, tuple(segments), 0.0)


def maintenance_profile(scenario: Scenario, decision: Decision) -> LossProfile:
    m = scenario.maintenance
    base = m.breakdown_repair_cost + m.tow_fixed_fee

    if decision is not Decision.CUSTOMER_FIRST:
        plan = _workshop_bound_plan(scenario, decision)
        fn = _affine(-2.0 * m.tow_cost_per_km * plan["v"], base + 2.0 * m.tow_cost_per_km * plan["dist0"])
        segments = (LossSegment(0.0, plan["horizon"], fn),)
        return LossProfile(decision, Impact.MAINTENANCE, plan["horizon"], segments, m.repair_cost)

    v, t_highway, _, horizon = _customer_first_times(scenario)
    pieces, position = _customer_first_segments(scenario, v, t_highway, horizon)
    if not pieces:  # alarm at a customer that hosts the nearest workshop
        pieces = [(0.0, horizon, scenario.geometry.nearest_workshop(scenario.geometry.customer_position)[0])]

    segments = []
    for a, b, workshop in pieces:
        def tow_loss(t, workshop=workshop):
            dist = workshop.distance_from(position(np.minimum(np.asarray(t, float), t_highway)))
            return base + 2.0 * m.tow_cost_per_km * dist

        segments.append(LossSegment(a, b, tow_loss))
    return LossProfile(decision, Impact.MAINTENANCE, horizon, tuple(segments), m.repair_cost)


def loss_profile(scenario: Scenario, decision: Decision, impact: Impact) -> LossProfile:
    if impact is Impact.AVAILABILITY:
        return availability_profile(scenario, decision)
    return maintenance_profile(scenario, decision)


def availability_loss_nb(scenario: Scenario, decision: Decision) -> float:
    """Delivery-delay hours when the truck never breaks down (clamped at 0)."""
    return max(0.0, availability_profile(scenario, decision).no_breakdown)


def availability_loss_b(scenario: Scenario, decision: Decision, t):
    """Delivery-delay hours for a breakdown at ``t`` (clamped at 0)."""
    return np.maximum(0.0, availability_profile(scenario, decision).at(t))


def maintenance_cost_nb(scenario: Scenario, decision: Decision) -> float:
    """Workshop bill when the truck arrives without breaking down."""
    return maintenance_profile(scenario, decision).no_breakdown


def maintenance_cost_b(scenario: Scenario, decision: Decision, t):
    """Workshop bill plus tow fee for a breakdown at ``t``."""
    return maintenance_profile(scenario, decision).at(t)
