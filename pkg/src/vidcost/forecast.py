"""Per-video view forecasting: least-squares line over hourly views.

Each video gets its own regression of views against the hour index
1..H; the next-period forecast sums the fitted line over hours H+1..2H,
clamping each hour at zero so negative extrapolations cannot offset
positive ones. Forecasts stay fractional: they are expected views, and
transcoding cost is linear in views.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .workload import ViewTrace


@dataclass(frozen=True)
class LinearModel:
    """Fitted views-per-hour line."""

    slope: float
    intercept: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 2:
            raise ValueError(f"n_points must be >= 2, got {self.n_points}")
        if not (math.isfinite(self.slope) and math.isfinite(self.intercept)):
            raise ValueError("slope and intercept must be finite")


# Per-H design constants: (centered hours, sum of squared deviations, mean hour).
_DESIGN_CACHE: dict[int, tuple[np.ndarray, float, float]] = {}
_FORECAST_HOURS_CACHE: dict[int, np.ndarray] = {}


def _design(n_hours: int) -> tuple[np.ndarray, float, float]:
    cached = _DESIGN_CACHE.get(n_hours)
    if cached is None:
        hours = np.arange(1, n_hours + 1, dtype=np.float64)
        hbar = float(hours.mean())
        centered = hours - hbar
        cached = (centered, float(centered.dot(centered)), hbar)
        _DESIGN_CACHE[n_hours] = cached
    return cached


def fit_ols(trace: ViewTrace) -> LinearModel:
    """Least-squares line through the points (h, views[h]) for h = 1..H.

    Uses the centered normal equations: slope = sum((h-hbar)*v) / sum((h-hbar)^2),
    intercept = vbar - slope*hbar.
    """
    n_hours = trace.period_hours
    if n_hours < 2:
        raise ValueError("fitting needs at least two hourly observations")
    centered, s_hh, hbar = _design(n_hours)
    v = trace.hourly_views
    slope = float(centered.dot(v)) / s_hh
    intercept = float(v.mean()) - slope * hbar
    return LinearModel(slope=slope, intercept=intercept, n_points=n_hours)


def predict_next_period_views(model: LinearModel, period_hours: int) -> float:
    """Forecast total views over the next period, hours H+1..2H.

    Each hour's forecast is clamped at zero before summing, so the result
    is always finite and non-negative.
    """
    if period_hours < 1:
        raise ValueError(f"period_hours must be >= 1, got {period_hours}")
    hours = _FORECAST_HOURS_CACHE.get(period_hours)
    if hours is None:
        hours = np.arange(period_hours + 1, 2 * period_hours + 1, dtype=np.float64)
        _FORECAST_HOURS_CACHE[period_hours] = hours
    hourly = np.maximum(model.slope * hours + model.intercept, 0.0)
    return float(hourly.sum())


def ols_forecast(trace: ViewTrace) -> float:
    """Fit-and-forecast convenience: the default predictor for policies."""
    return predict_next_period_views(fit_ols(trace), trace.period_hours)
