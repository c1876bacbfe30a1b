"""Remaining-useful-life model of the faulty component.

Each decision carries its own Gamma distribution for the time until the
component actually fails. Densities are evaluated in log space so that the
very peaked shapes produced by the sensitivity sweeps (shape parameters in
the hundreds) stay finite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .decisions import Decision


@dataclass(frozen=True)
class GammaParams:
    """Shape/scale parameterisation; scale is in hours."""

    shape: float
    scale: float

    def __post_init__(self):
        if self.shape <= 0:
            raise ValueError(f"gamma shape must be > 0, got {self.shape}")
        if self.scale <= 0:
            raise ValueError(f"gamma scale must be > 0, got {self.scale}")

    def pdf(self, t):
        """Probability density at ``t`` hours (vectorised).

        Raises for negative ``t``. At t=0 the density is 0 for shape > 1,
        1/scale for shape = 1 and diverges for shape < 1.
        """
        t = np.asarray(t, dtype=float)
        if np.any(t < 0):
            raise ValueError("RUL density is undefined for negative times")
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        out = np.zeros_like(t)
        pos = t > 0
        tp = t[pos]
        out[pos] = np.exp(
            (self.shape - 1.0) * np.log(tp)
            - tp / self.scale
            - special.gammaln(self.shape)
            - self.shape * np.log(self.scale)
        )
        if self.shape == 1.0:
            out[~pos] = 1.0 / self.scale
        elif self.shape < 1.0:
            out[~pos] = np.inf
        return float(out[0]) if scalar else out

    def cdf(self, t):
        """Regularised lower incomplete gamma of t/scale (vectorised)."""
        t = np.asarray(t, dtype=float)
        if np.any(t < 0):
            raise ValueError("RUL distribution is undefined for negative times")
        out = special.gammainc(self.shape, t / self.scale)
        return float(out) if out.ndim == 0 else out

    @property
    def mean(self) -> float:
        return self.shape * self.scale

    @property
    def variance(self) -> float:
        return self.shape * self.scale**2

    def moments(self) -> tuple[float, float]:
        return self.mean, self.variance

    def sample(self, rng: np.random.Generator, size: int):
        return rng.gamma(self.shape, self.scale, size=size)


def reduced_speed_params(
    base: GammaParams, normal_speed: float, reduced_speed: float
) -> GammaParams:
    """Gamma parameters for the reduced-speed drive, derived from the
    normal-speed ones.

    Solves the pair of constraints: equal RUL variance, and expected distance
    covered before failure at the reduced speed equal to twice the expected
    distance at normal speed. Closed form::

        scale' = scale * reduced / (2 * normal)
        shape' = shape * (2 * normal / reduced) ** 2
    """
    if normal_speed <= 0 or reduced_speed <= 0:
        raise ValueError("speeds must be > 0")
    ratio = 2.0 * normal_speed / reduced_speed
    return GammaParams(shape=base.shape * ratio**2, scale=base.scale / ratio)


def fixed_mean_params(mean: float, shape: float) -> GammaParams:
    """Gamma parameters with the given shape and a scale chosen to keep the
    mean fixed; variance then equals mean**2 / shape."""
    if mean <= 0:
        raise ValueError(f"mean must be > 0, got {mean}")
    return GammaParams(shape=shape, scale=mean / shape)


@dataclass(frozen=True)
class GammaRul:
    """Per-decision RUL distributions."""

    workshop_reduced: GammaParams
    workshop_normal: GammaParams
    customer_first: GammaParams

    def params_for(self, decision: Decision) -> GammaParams:
        if decision is Decision.WORKSHOP_REDUCED:
            return self.workshop_reduced
        if decision is Decision.WORKSHOP_NORMAL:
            return self.workshop_normal
        return self.customer_first

    def pdf(self, decision: Decision, t):
        return self.params_for(decision).pdf(t)

    def cdf(self, decision: Decision, t):
        return self.params_for(decision).cdf(t)

    def moments(self, decision: Decision) -> tuple[float, float]:
        return self.params_for(decision).moments()
