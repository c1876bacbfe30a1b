"""Route model: a straight highway with off-route workshops and a customer.

Positions are kilometres along the highway, measured from the entrance where
the truck started. Workshops and the customer sit at an access point on the
highway plus an off-highway offset, so every distance query is an absolute
highway gap plus the relevant offsets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decisions import Decision


@dataclass(frozen=True)
class Workshop:
    """A maintenance workshop reachable from the highway."""

    label: str
    highway_position: float
    offset: float = 0.0

    def __post_init__(self):
        if self.offset < 0:
            raise ValueError(f"workshop {self.label!r} offset must be >= 0, got {self.offset}")

    def distance_from(self, position):
        """Road distance from a highway position to the workshop door."""
        return np.abs(position - self.highway_position) + self.offset


@dataclass(frozen=True)
class RouteGeometry:
    highway_length: float
    workshops: tuple[Workshop, ...]
    customer_position: float
    customer_offset: float = 0.0
    alarm_position: float = 0.0

    def __post_init__(self):
        if self.highway_length <= 0:
            raise ValueError(f"highway_length must be > 0, got {self.highway_length}")
        if not self.workshops:
            raise ValueError("workshops must be nonempty")
        for w in self.workshops:
            if not 0.0 <= w.highway_position <= self.highway_length:
                raise ValueError(
                    f"workshop {w.label!r} highway_position {w.highway_position} "
                    f"outside [0, {self.highway_length}]"
                )
        if not 0.0 <= self.customer_position <= self.highway_length:
            raise ValueError(
                f"customer_position {self.customer_position} outside [0, {self.highway_length}]"
            )
        if self.customer_offset < 0:
            raise ValueError(f"customer_offset must be >= 0, got {self.customer_offset}")
        if not 0.0 <= self.alarm_position <= self.highway_length:
            raise ValueError(
                f"alarm_position {self.alarm_position} outside [0, {self.highway_length}]"
            )
        # deterministic nearest-workshop tie-breaking relies on this ordering
        object.__setattr__(
            self,
            "workshops",
            tuple(sorted(self.workshops, key=lambda w: (w.highway_position, w.offset, w.label))),
        )

    def nearest_workshop(self, position: float) -> tuple[Workshop, float]:
        """Workshop with minimal road distance from ``position``.

        Ties go to the workshop with the lower highway position, so results
        are deterministic.
        """
        best = min(self.workshops, key=lambda w: (w.distance_from(position), w.highway_position))
        return best, float(best.distance_from(position))

    def nearest_workshop_distance(self, positions):
        """Vectorised version of the nearest-workshop distance query."""
        positions = np.asarray(positions, dtype=float)
        dists = np.stack([w.distance_from(positions) for w in self.workshops])
        return dists.min(axis=0)

    def distance_to_customer(self, position: float) -> float:
        """Road distance from a highway position to the customer door."""
        return abs(self.customer_position - position) + self.customer_offset

    def workshop_to_customer(self, workshop: Workshop) -> float:
        """Road distance from a workshop door to the customer door."""
        return (
            abs(workshop.highway_position - self.customer_position)
            + workshop.offset
            + self.customer_offset
        )

    def distance_kink_positions(self, lo: float, hi: float) -> list[float]:
        """Highway positions in (lo, hi) where the nearest-workshop distance
        can change slope or argmin.

        The per-workshop distance is a V shape, so the pointwise minimum can
        only kink at an access point or where two V arms cross.
        """
        candidates: set[float] = set()
        for w in self.workshops:
            candidates.add(w.highway_position)
        for i, a in enumerate(self.workshops):
            for b in self.workshops[i + 1:]:
                # rising arm of one against falling arm of the other
                candidates.add((a.highway_position + b.highway_position + b.offset - a.offset) / 2.0)
                candidates.add((a.highway_position + b.highway_position + a.offset - b.offset) / 2.0)
        return sorted(p for p in candidates if lo < p < hi)


@dataclass(frozen=True)
class SpeedProfile:
    """Truck and tow-truck speeds in km/h."""

    normal: float
    tow_loaded: float
    tow_unloaded: float
    workshop_reduced: float
    workshop_normal: float
    customer_normal: float

    def __post_init__(self):
        for name in (
            "normal",
            "tow_loaded",
            "tow_unloaded",
            "workshop_reduced",
            "workshop_normal",
            "customer_normal",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"speed {name} must be > 0, got {getattr(self, name)}")
        if self.tow_loaded > self.tow_unloaded:
            raise ValueError(
                f"tow_loaded ({self.tow_loaded}) must be <= tow_unloaded ({self.tow_unloaded})"
            )
        if self.workshop_reduced > self.workshop_normal:
            raise ValueError(
                f"workshop_reduced ({self.workshop_reduced}) must be <= "
                f"workshop_normal ({self.workshop_normal})"
            )

    def for_decision(self, decision: Decision) -> float:
        if decision is Decision.WORKSHOP_REDUCED:
            return self.workshop_reduced
        if decision is Decision.WORKSHOP_NORMAL:
            return self.workshop_normal
        return self.customer_normal


def time_to_customer(geometry: RouteGeometry, speeds: SpeedProfile) -> float:
    """Hours for the truck to finish the delivery under the customer-first
    decision, counted from the alarm."""
    return geometry.distance_to_customer(geometry.alarm_position) / speeds.customer_normal


def time_to_workshop(geometry: RouteGeometry, speeds: SpeedProfile, decision: Decision) -> float:
    """Breakdown horizon: hours until the truck reaches a workshop door if it
    never breaks down.

    For the workshop-bound decisions this is the nearest-workshop distance
    over the decision speed. For customer-first it is the delivery time plus
    the drive from the customer to its nearest workshop.
    """
    v = speeds.for_decision(decision)
    if decision is Decision.CUSTOMER_FIRST:
        t_customer = time_to_customer(geometry, speeds)
        workshop, _ = geometry.nearest_workshop(geometry.customer_position)
        return t_customer + geometry.workshop_to_customer(workshop) / v
    _, dist = geometry.nearest_workshop(geometry.alarm_position)
    return dist / v


def truck_position(
    geometry: RouteGeometry, speeds: SpeedProfile, decision: Decision, t: float
) -> float:
    """Highway position of the truck ``t`` hours after the alarm.

    Workshop-bound trucks move toward the nearest workshop's access point and
    hold there while covering the off-highway leg; customer-first trucks move
    toward the customer's access point and hold there afterwards, so the
    position is monotone in ``t`` for every decision.
    """
    horizon = time_to_workshop(geometry, speeds, decision)
    if t < 0 or t > horizon + 1e-12:
        raise ValueError(f"t={t} outside the decision horizon [0, {horizon}]")
    start = geometry.alarm_position
    v = speeds.for_decision(decision)
    if decision is Decision.CUSTOMER_FIRST:
        target = geometry.customer_position
    else:
        target = geometry.nearest_workshop(start)[0].highway_position
    if target >= start:
        return min(start + v * t, target)
    return max(start - v * t, target)
