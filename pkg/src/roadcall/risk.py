"""Economic utilities and the expected-loss engine.

A decision's economic risk is the expectation, over the breakdown time, of
the utility of its impacts: the integral of utility(loss(t)) against the
RUL density over the breakdown window, plus the survival probability times
the utility of the no-breakdown loss. The decision with the smallest total
over the selected impacts wins; ties go to the more risk-averse decision.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import TYPE_CHECKING, Mapping

import numpy as np

from . import impacts as impacts_mod
from .decisions import BOTH_IMPACTS, DECISION_ORDER, Decision, Impact
from .quadrature import QuadratureError, integrate, level_crossings

if TYPE_CHECKING:
    from .scenario import Scenario


@dataclass(frozen=True)
class AvailabilityUtility:
    """Contractual penalty for delivery delay, in EUR.

    No penalty up to ``grace_hours`` of delay, a linear rate between
    ``grace_hours`` and ``cancel_hours``, and the flat cancellation penalty
    beyond that.
    """

    grace_hours: float
    cancel_hours: float
    cancel_penalty: float
    hourly_rate: float = 100.0

    def __post_init__(self):
        if self.grace_hours < 0:
            raise ValueError(f"grace_hours must be >= 0, got {self.grace_hours}")
        if self.cancel_hours <= self.grace_hours:
            raise ValueError(
                f"cancel_hours ({self.cancel_hours}) must be > grace_hours "
                f"({self.grace_hours})"
            )
        if self.cancel_penalty < 0:
            raise ValueError(f"cancel_penalty must be >= 0, got {self.cancel_penalty}")
        if self.hourly_rate < 0:
            raise ValueError(f"hourly_rate must be >= 0, got {self.hourly_rate}")
        ramp_top = self.hourly_rate * (self.cancel_hours - self.grace_hours)
        if self.cancel_penalty < ramp_top:
            warnings.warn(
                f"cancel_penalty ({self.cancel_penalty}) is below the delay penalty "
                f"just before cancellation ({ramp_top}); the utility is not monotone",
                stacklevel=2,
            )

    def value(self, loss):
        """EUR penalty for a delay of ``loss`` hours (vectorised).

        Negative delays are a domain error; the engine clamps losses at zero
        before applying the utility.
        """
        loss = np.asarray(loss, dtype=float)
        if np.any(loss < 0):
            raise ValueError("availability loss must be >= 0")
        out = np.where(
            loss <= self.grace_hours,
            0.0,
            np.where(
                loss <= self.cancel_hours,
                self.hourly_rate * (loss - self.grace_hours),
                self.cancel_penalty,
            ),
        )
        return float(out) if out.ndim == 0 else out


def maintenance_utility(loss):
    """Maintenance cost is a direct economic loss: the identity map."""
    loss = np.asarray(loss, dtype=float)
    return float(loss) if loss.ndim == 0 else loss


def _availability_pieces_for_segment(scenario: Scenario, seg) -> list[tuple[float, float]]:
    """Split one profile segment where the loss crosses a utility breakpoint
    (kink at the grace bound, jump at the cancellation bound)."""
    if seg.end - seg.start <= 0:
        return []
    u = scenario.utility

    def scalar(t, fn=seg.value):
        return float(fn(np.array([t]))[0])

    cuts = level_crossings(scalar, seg.start, seg.end, (u.grace_hours, u.cancel_hours))
    bounds = [seg.start, *cuts, seg.end]
    return list(zip(bounds, bounds[1:]))


def _availability_integrands(scenario: Scenario, profile) -> list[tuple[float, float, object]]:
    """Per-piece utility(loss(t)) callables for the availability impact.

    Pieces never straddle a utility breakpoint, so each one gets the single
    analytic branch that applies on it (decided at the piece midpoint). This
    keeps every integrand smooth on its closed piece; the jump at the
    cancellation bound lives exactly on a piece boundary.
    """
    u = scenario.utility
    pieces = []
    for seg in profile.segments:
        for a, b in _availability_pieces_for_segment(scenario, seg):
            mid_loss = max(float(np.atleast_1d(seg.value(0.5 * (a + b)))[0]), 0.0)
            if mid_loss <= u.grace_hours:
                continue  # zero branch contributes nothing
            if mid_loss <= u.cancel_hours:
                def ramp(t, fn=seg.value):
                    return u.hourly_rate * np.maximum(fn(t) - u.grace_hours, 0.0)

                pieces.append((a, b, ramp))
            else:
                pieces.append((a, b, lambda t: np.full_like(np.asarray(t, float), u.cancel_penalty)))
    return pieces


def _integrate_against_density(outcome, params, a: float, b: float, settings) -> float:
    """Integrate outcome(t) * pdf(t) over [a, b].

    Pieces that start at the origin get the substitution t = s**(1/shape)
    when the shape is fractional and below 2: the Jacobian cancels the
    t**(shape-1) factor exactly, removing the algebraic cusp (or, for
    shape < 1, the divergence) that would wreck Simpson's convergence.
    """
    if a == 0.0 and params.shape < 2.0 and params.shape != 1.0:
        shape, scale = params.shape, params.scale
        norm = math.exp(-math.lgamma(shape) - shape * math.log(scale)) / shape

        def transformed(s):
            t = np.power(np.asarray(s, dtype=float), 1.0 / shape)
            return outcome(t) * np.exp(-t / scale) * norm

        return integrate(transformed, 0.0, b**shape, settings.rel_tol, settings.max_panels)

    def integrand(t):
        return outcome(t) * params.pdf(t)

    return integrate(integrand, a, b, settings.rel_tol, settings.max_panels)


def expected_impact_loss(scenario: Scenario, decision: Decision, impact: Impact) -> float:
    """Expected EUR loss of one impact under one decision.

    Integrates utility(loss(t)) * pdf(t) over the breakdown window piece by
    piece and adds the no-breakdown term weighted by the survival
    probability at the horizon.
    """
    profile = impacts_mod.loss_profile(scenario, decision, impact)
    params = scenario.rul.params_for(decision)
    settings = scenario.quadrature

    if impact is Impact.AVAILABILITY:
        pieces = _availability_integrands(scenario, profile)
        nb_value = scenario.utility.value(max(profile.no_breakdown, 0.0))
    else:
        pieces = [
            (seg.start, seg.end, seg.value)
            for seg in profile.segments
            if seg.end - seg.start > 0
        ]
        nb_value = maintenance_utility(profile.no_breakdown)

    total = 0.0
    for a, b, fn in pieces:
        try:
            total += _integrate_against_density(fn, params, a, b, settings)
        except QuadratureError as err:
            raise QuadratureError(
                f"expected {impact.value} loss for decision {decision.value} "
                f"on [{a}, {b}] did not converge",
                err.estimate,
                err.previous,
                err.panels,
            ) from err
    total += (1.0 - params.cdf(profile.horizon)) * nb_value
    return float(total)


def total_risk(
    scenario: Scenario, decision: Decision, impacts: tuple[Impact, ...] = BOTH_IMPACTS
) -> float:
    """Sum of expected losses over the selected impacts."""
    return sum(expected_impact_loss(scenario, decision, impact) for impact in impacts)


@dataclass(frozen=True)
class RiskReport:
    """Per-decision expected losses at one alarm location, and the pick."""

    alarm_position: float
    impacts: tuple[Impact, ...]
    losses: Mapping[Decision, Mapping[Impact, float]]
    chosen: Decision

    def loss(self, decision: Decision, impact: Impact) -> float:
        return self.losses[decision][impact]

    def total(self, decision: Decision) -> float:
        return sum(self.losses[decision].values())

    def totals(self) -> dict[Decision, float]:
        return {d: self.total(d) for d in DECISION_ORDER}

    def minimal_risk(self) -> float:
        return self.total(self.chosen)


def choose_decision(
    scenario: Scenario, impacts: tuple[Impact, ...] = BOTH_IMPACTS
) -> RiskReport:
    """Evaluate every decision and pick the one with minimal expected loss.

    Ties break toward the risk-averse end of the decision order.
    """
    losses = {
        d: {impact: expected_impact_loss(scenario, d, impact) for impact in impacts}
        for d in DECISION_ORDER
    }
    chosen = DECISION_ORDER[0]
    for d in DECISION_ORDER[1:]:
        if sum(losses[d].values()) < sum(losses[chosen].values()):
            chosen = d
    return RiskReport(
        alarm_position=scenario.geometry.alarm_position,
        impacts=tuple(impacts),
        losses=losses,
        chosen=chosen,
    )
