"""Figure rendering for the experiment CSVs.

Every experiment command can drop a PNG next to its CSV. Rendering is kept
out of the risk engine; these helpers only consume result objects.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .decisions import DECISION_ORDER, Impact
from .experiments import (
    EERReport,
    RulSensitivityPoint,
    SweepResult,
    UtilitySensitivityPoint,
    WorkshopComparison,
)

_COLORS = {"wr": "tab:blue", "wn": "tab:orange", "cn": "tab:green"}


def _finish(fig, path: str | Path) -> Path:
    path = Path(path)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_sweep(result: SweepResult, path: str | Path) -> Path:
    """Per-impact risks (top) and totals (bottom) along the highway."""
    n_rows = 2 if len(result.impacts) > 1 else 1
    fig, axes = plt.subplots(n_rows, 1, figsize=(7, 3.2 * n_rows), sharex=True)
    axes = [axes] if n_rows == 1 else list(axes)

    if len(result.impacts) > 1:
        ax = axes[0]
        for d in DECISION_ORDER:
            for impact, style in ((Impact.AVAILABILITY, "-"), (Impact.MAINTENANCE, "--")):
                ax.plot(
                    result.grid,
                    [r.loss(d, impact) for r in result.reports],
                    style,
                    color=_COLORS[d.value],
                    label=f"{d.value} {impact.value}",
                )
        ax.set_ylabel("expected loss (EUR)")
        ax.legend(ncol=3, fontsize=8)

    ax = axes[-1]
    for d in DECISION_ORDER:
        ax.plot(result.grid, result.totals(d), color=_COLORS[d.value], label=f"{d.value} total")
    ax.plot(result.grid, result.minima(), "k:", label="minimal risk")
    ax.set_xlabel("alarm location (km)")
    ax.set_ylabel("expected loss (EUR)")
    ax.legend(ncol=2, fontsize=8)
    return _finish(fig, path)


def plot_eer(report: EERReport, path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.2))
    labels = [f"always {d.value}" for d in DECISION_ORDER] + ["min-risk policy"]
    values = [report.baselines[d] for d in DECISION_ORDER] + [report.policy]
    bars = ax.bar(labels, values, color=[_COLORS[d.value] for d in DECISION_ORDER] + ["k"])
    for bar, value in zip(bars, values):
        ax.annotate(f"{value:.0f}", (bar.get_x() + bar.get_width() / 2, value),
                    ha="center", va="bottom", fontsize=8)
    ax.set_ylabel("expected economic risk (EUR)")
    return _finish(fig, path)


def plot_rul_sensitivity(points: tuple[RulSensitivityPoint, ...], path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(5.5, 3.2))
    ordered = sorted(points, key=lambda p: p.variance)
    ax.plot([p.variance for p in ordered], [p.expected_mer for p in ordered], "o-", ms=3)
    ax.set_xlabel("RUL variance at normal speed (h²)")
    ax.set_ylabel("expected minimal risk (EUR)")
    return _finish(fig, path)


def plot_utility_sensitivity(points: tuple[UtilitySensitivityPoint, ...], path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(5.5, 3.2))
    for cancel_hours in sorted({p.cancel_hours for p in points}):
        series = sorted((p for p in points if p.cancel_hours == cancel_hours),
                        key=lambda p: p.cancel_penalty)
        ax.plot(
            [p.cancel_penalty for p in series],
            [p.expected_mer for p in series],
            "o-",
            ms=3,
            label=f"cancel after {cancel_hours:g} h",
        )
    ax.set_xlabel("cancellation penalty (EUR)")
    ax.set_ylabel("expected minimal risk (EUR)")
    ax.legend(fontsize=8)
    return _finish(fig, path)


def plot_workshop_comparison(comparison: WorkshopComparison, path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(7, 3.6))
    for d in DECISION_ORDER:
        ax.plot(comparison.base.grid, comparison.base.totals(d), "--",
                color=_COLORS[d.value], label=f"{d.value} (base)")
        ax.plot(comparison.variant.grid, comparison.variant.totals(d), "-",
                color=_COLORS[d.value], label=f"{d.value} (variant)")
    ax.set_xlabel("alarm location (km)")
    ax.set_ylabel("expected loss (EUR)")
    ax.legend(ncol=3, fontsize=8)
    return _finish(fig, path)
