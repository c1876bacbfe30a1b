"""Desk-scale experiments: alarm-location sweeps, baseline comparison and
sensitivity analyses.

Sweep points are independent pure evaluations, so they may fan out over a
thread pool; aggregation is slot-indexed and results do not depend on the
worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .decisions import BOTH_IMPACTS, DECISION_ORDER, Decision, Impact
from .geometry import Workshop
from .risk import RiskReport, choose_decision
from .rul import GammaRul, fixed_mean_params, reduced_speed_params
from .scenario import Scenario

#: Sensitivity-sweep defaults: 45 shape values on (1, 10], nine cancellation
#: penalties on [800, 4000] and the two cancellation bounds compared.
RUL_SHAPE_POINTS = 45
RUL_SHAPE_RANGE = (1.0, 10.0)
PENALTY_RANGE = (800.0, 4000.0)
PENALTY_POINTS = 9
CANCEL_HOURS_VALUES = (6.0, 10.0)


def alarm_grid(highway_length: float, step: float) -> tuple[float, ...]:
    """Evenly spaced alarm locations covering [0, highway_length]."""
    if step <= 0:
        raise ValueError(f"grid step must be > 0, got {step}")
    count = int(np.floor(highway_length / step + 1e-9))
    grid = [k * step for k in range(count + 1)]
    if grid[-1] < highway_length - 1e-9:
        grid.append(highway_length)
    else:
        grid[-1] = highway_length
    return tuple(grid)


@dataclass(frozen=True)
class SweepResult:
    """Risk reports along the alarm-location grid."""

    grid: tuple[float, ...]
    reports: tuple[RiskReport, ...]
    impacts: tuple[Impact, ...]

    def totals(self, decision: Decision) -> np.ndarray:
        return np.array([r.total(decision) for r in self.reports])

    def minima(self) -> np.ndarray:
        return np.array([r.minimal_risk() for r in self.reports])


def sweep(
    scenario: Scenario,
    step: float | None = None,
    impacts: tuple[Impact, ...] = BOTH_IMPACTS,
    jobs: int = 1,
) -> SweepResult:
    """Evaluate the decision engine at every grid point."""
    grid = alarm_grid(scenario.geometry.highway_length, step or scenario.grid_step)

    def evaluate(alarm: float) -> RiskReport:
        try:
            return choose_decision(scenario.with_alarm(alarm), impacts)
        except Exception as err:
            raise RuntimeError(f"risk evaluation failed at alarm km {alarm}") from err

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = tuple(pool.map(evaluate, grid))
    else:
        reports = tuple(evaluate(alarm) for alarm in grid)
    return SweepResult(grid=grid, reports=reports, impacts=tuple(impacts))


@dataclass(frozen=True)
class EERReport:
    """Expected economic risk of the always-take-one baselines versus the
    minimal-risk policy, with the relative reductions."""

    baselines: Mapping[Decision, float]
    policy: float
    reductions: Mapping[Decision, float]


def eer(result: SweepResult) -> EERReport:
    """Average risks over the grid (uniform alarm-location prior)."""
    if not result.reports:
        raise ValueError("empty sweep")
    baselines = {d: float(result.totals(d).mean()) for d in DECISION_ORDER}
    policy = float(result.minima().mean())
    reductions = {d: (baselines[d] - policy) / baselines[d] for d in DECISION_ORDER}
    return EERReport(baselines=baselines, policy=policy, reductions=reductions)


def expected_mer(result: SweepResult) -> float:
    """Mean over the grid of the per-location minimal risk."""
    return float(result.minima().mean())


@dataclass(frozen=True)
class RulSensitivityPoint:
    shape: float
    variance: float
    expected_mer: float


def rul_shape_grid(
    points: int = RUL_SHAPE_POINTS, bounds: tuple[float, float] = RUL_SHAPE_RANGE
) -> tuple[float, ...]:
    """Uniform grid on (lo, hi]: lo excluded, hi included."""
    lo, hi = bounds
    return tuple(lo + (hi - lo) * k / points for k in range(1, points + 1))


def rul_sensitivity(
    scenario: Scenario,
    shapes: tuple[float, ...] | None = None,
    step: float | None = None,
    jobs: int = 1,
) -> tuple[RulSensitivityPoint, ...]:
    """Expected minimal risk as the RUL estimation accuracy varies.

    Each grid point keeps the normal-speed RUL mean fixed while changing its
    shape (so the variance is mean**2/shape), mirrors those parameters onto
    the customer-first decision, and re-derives the reduced-speed parameters
    from the speed ratio.
    """
    mean = scenario.rul.workshop_normal.mean
    out = []
    for shape in shapes or rul_shape_grid():
        normal = fixed_mean_params(mean, shape)
        reduced = reduced_speed_params(
            normal, scenario.speeds.workshop_normal, scenario.speeds.workshop_reduced
        )
        variant = scenario.with_rul(
            GammaRul(workshop_reduced=reduced, workshop_normal=normal, customer_first=normal)
        )
        out.append(
            RulSensitivityPoint(
                shape=shape,
                variance=normal.variance,
                expected_mer=expected_mer(sweep(variant, step=step, jobs=jobs)),
            )
        )
    return tuple(out)


@dataclass(frozen=True)
class UtilitySensitivityPoint:
    cancel_hours: float
    cancel_penalty: float
    expected_mer: float


def utility_sensitivity(
    scenario: Scenario,
    cancel_hours_values: tuple[float, ...] = CANCEL_HOURS_VALUES,
    penalties: tuple[float, ...] | None = None,
    step: float | None = None,
    jobs: int = 1,
) -> tuple[UtilitySensitivityPoint, ...]:
    """Expected minimal risk across the delay-contract grid."""
    import dataclasses

    if penalties is None:
        lo, hi = PENALTY_RANGE
        penalties = tuple(np.linspace(lo, hi, PENALTY_POINTS))
    out = []
    for cancel_hours in cancel_hours_values:
        for penalty in penalties:
            utility = dataclasses.replace(
                scenario.utility, cancel_hours=cancel_hours, cancel_penalty=penalty
            )
            variant = scenario.with_utility(utility)
            out.append(
                UtilitySensitivityPoint(
                    cancel_hours=cancel_hours,
                    cancel_penalty=penalty,
                    expected_mer=expected_mer(sweep(variant, step=step, jobs=jobs)),
                )
            )
    return tuple(out)


@dataclass(frozen=True)
class WorkshopComparison:
    base: SweepResult
    variant: SweepResult
    base_mer: float
    variant_mer: float

    @property
    def relative_change(self) -> float:
        """Negative when the variant workshop set lowers the expected MER."""
        return (self.variant_mer - self.base_mer) / self.base_mer


def workshop_scenario(
    scenario: Scenario,
    workshops: tuple[Workshop, ...],
    step: float | None = None,
    jobs: int = 1,
) -> WorkshopComparison:
    """Sweep with an alternative workshop set and compare against the
    scenario's own workshops."""
    if not workshops:
        raise ValueError("workshops must be nonempty")
    base = sweep(scenario, step=step, jobs=jobs)
    variant = sweep(scenario.with_workshops(workshops), step=step, jobs=jobs)
    return WorkshopComparison(
        base=base,
        variant=variant,
        base_mer=expected_mer(base),
        variant_mer=expected_mer(variant),
    )


def evenly_spaced_workshops(scenario: Scenario, count: int) -> tuple[Workshop, ...]:
    """``count`` workshops spread over the highway, keeping the first
    workshop's off-highway offset for all of them.

    With two workshops this reproduces the one-at-each-end layout whose
    nearest-workshop switch sits at the highway midpoint.
    """
    if count < 1:
        raise ValueError(f"workshop count must be >= 1, got {count}")
    first = scenario.geometry.workshops[0]
    if count == 1:
        return (first,)
    length = scenario.geometry.highway_length
    positions = [length * k / (count - 1) for k in range(count)]
    labels = "abcdefghijklmnopqrstuvwxyz"
    return tuple(
        Workshop(label=labels[i % len(labels)], highway_position=p, offset=first.offset)
        for i, p in enumerate(positions)
    )
