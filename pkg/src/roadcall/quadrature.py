"""Composite Simpson integration and breakpoint location.

The expected-loss integrands are smooth between a handful of known
breakpoints (delivery instant, utility kinks), so the risk engine splits
there and integrates each piece with panel-doubling Simpson plus a
Richardson correction.
"""

from __future__ import annotations

from collections.abc import Callable

import numpy as np

DEFAULT_REL_TOL = 1e-8
DEFAULT_MAX_PANELS = 2**20
BISECT_TOL = 1e-10
SCAN_POINTS = 10_000

# keeps true-zero integrals from refining forever
_ABS_FLOOR = 1e-12


class QuadratureError(RuntimeError):
    """Raised when panel doubling hits the cap without converging."""

    def __init__(self, message: str, estimate: float, previous: float, panels: int):
        super().__init__(
            f"{message}: estimate={estimate!r} previous={previous!r} panels={panels}"
        )
        self.estimate = estimate
        self.previous = previous
        self.panels = panels


def integrate(
    fn: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rel_tol: float = DEFAULT_REL_TOL,
    max_panels: int = DEFAULT_MAX_PANELS,
) -> float:
    """Integrate a vectorised function over [a, b].

    Panel count doubles until two successive composite Simpson estimates
    agree to ``rel_tol``; the returned value includes the Richardson
    correction from the last two estimates.
    """
    if b <= a:
        return 0.0

    def simpson(n: int) -> float:
        x = np.linspace(a, b, n + 1)
        y = np.asarray(fn(x), dtype=float)
        h = (b - a) / n
        return float(h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum()))

    n = 8
    prev = simpson(n)
    while n < max_panels:
        n *= 2
        cur = simpson(n)
        if abs(cur - prev) <= rel_tol * abs(cur) + _ABS_FLOOR:
            return cur + (cur - prev) / 15.0
        prev = cur
    raise QuadratureError("Simpson refinement did not converge", prev, prev, n)


def bisect_level(
    fn: Callable[[float], float], lo: float, hi: float, level: float, tol: float = BISECT_TOL
) -> float:
    """Bisect for fn(t) = level on [lo, hi]; the endpoints must straddle."""
    flo = fn(lo) - level
    fhi = fn(hi) - level
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise ValueError("bisection endpoints do not straddle the level")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fmid = fn(mid) - level
        if fmid == 0.0:
            return mid
        if flo * fmid < 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def level_crossings(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    levels: tuple[float, ...],
    tol: float = BISECT_TOL,
) -> list[float]:
    """Times strictly inside (lo, hi) where fn crosses any of the levels.

    Assumes fn is affine on the interval (checked against the midpoint); a
    non-affine fn falls back to a dense scan for sign changes so oddball
    configurations still get every crossing bracketed.
    """
    if hi <= lo:
        return []
    flo, fhi = fn(lo), fn(hi)
    fmid = fn(0.5 * (lo + hi))
    scale = max(abs(flo), abs(fhi), 1.0)
    affine = abs(fmid - 0.5 * (flo + fhi)) <= 1e-9 * scale

    out: list[float] = []
    for level in levels:
        if affine:
            if (flo - level) * (fhi - level) < 0:
                out.append(bisect_level(fn, lo, hi, level, tol))
            continue
        grid = np.linspace(lo, hi, SCAN_POINTS)
        vals = np.array([fn(t) for t in grid]) - level
        signs = np.sign(vals)
        for i in np.nonzero(signs[:-1] * signs[1:] < 0)[0]:
            out.append(bisect_level(fn, float(grid[i]), float(grid[i + 1]), level, tol))
    return sorted(t for t in out if lo < t < hi)
