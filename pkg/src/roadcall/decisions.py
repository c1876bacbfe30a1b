"""Maintenance decision alternatives and the impact kinds they are scored on."""

from __future__ import annotations

import enum


class Decision(enum.Enum):
    """What the truck does once the fault alarm is on.

    WORKSHOP_REDUCED  drive to the nearest workshop at reduced speed (risk-averse)
    WORKSHOP_NORMAL   drive to the nearest workshop at normal speed (risk-neutral)
    CUSTOMER_FIRST    finish the delivery first, then go to a workshop (risk-seeking)
    """

    WORKSHOP_REDUCED = "wr"
    WORKSHOP_NORMAL = "wn"
    CUSTOMER_FIRST = "cn"

    def __str__(self) -> str:
        return self.value


class Impact(enum.Enum):
    """Consequence channel of a decision: delivery delay or money paid out."""

    AVAILABILITY = "al"
    MAINTENANCE = "mc"

    def __str__(self) -> str:
        return self.value


#: Evaluation order everywhere; doubles as the tie-break preference
#: (most risk-averse decision wins a tie).
DECISION_ORDER: tuple[Decision, ...] = (
    Decision.WORKSHOP_REDUCED,
    Decision.WORKSHOP_NORMAL,
    Decision.CUSTOMER_FIRST,
)

BOTH_IMPACTS: tuple[Impact, ...] = (Impact.AVAILABILITY, Impact.MAINTENANCE)


def parse_impacts(token: str) -> tuple[Impact, ...]:
    """Map a CLI-style selector (``al``, ``mc`` or ``both``) to impact kinds."""
    if token == "both":
        return BOTH_IMPACTS
    try:
        return (Impact(token),)
    except ValueError:
        raise ValueError(f"unknown impact selector {token!r}; expected al, mc or both") from None
