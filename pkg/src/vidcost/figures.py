"""Matplotlib figure rendering for reports. Import is deferred to keep the
plotting dependency off the hot path."""

from __future__ import annotations

import os
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .forecast import LinearModel
from .simulate import ExperimentReport
from .workload import ViewTrace


def _atomic_savefig(fig, path: Path) -> None:
    tmp = path.with_name(path.name + ".tmp.png")
    fig.savefig(tmp, dpi=150, bbox_inches="tight")
    plt.close(fig)
    os.replace(tmp, path)


def render_cost_curves(report: ExperimentReport, path: str | Path) -> None:
    """Mean total cost vs hot-video percentage, one line per policy."""
    by_cell = {(r.fav_fraction, r.policy): r.mean_total_dollars for r in report.rows}
    x = [100.0 * f for f in report.fav_sweep]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for pk in report.policies:
        y = [by_cell[(f, pk)] for f in report.fav_sweep]
        ax.plot(x, y, marker="o", label=pk.value)
    ax.set_xlabel("Frequently accessed videos in the repository (%)")
    ax.set_ylabel("Mean total cost ($)")
    ax.grid(True, alpha=0.4)
    ax.legend()
    _atomic_savefig(fig, Path(path))


def render_trace_fit(trace: ViewTrace, model: LinearModel, path: str | Path) -> None:
    """Hourly views scatter with the fitted regression line."""
    hours = np.arange(1, trace.period_hours + 1)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(hours, trace.hourly_views, ".", markersize=3, label="views")
    ax.plot(
        hours,
        model.slope * hours + model.intercept,
        lw=2,
        label=f"fit: v = {model.slope:.4g}·h + {model.intercept:.4g}",
    )
    ax.set_xlabel("Hour")
    ax.set_ylabel("Views per hour")
    ax.grid(True, alpha=0.4)
    ax.legend()
    _atomic_savefig(fig, Path(path))
