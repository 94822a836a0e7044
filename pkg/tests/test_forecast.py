import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vidcost import ViewTrace, fit_ols, ols_forecast, predict_next_period_views
from vidcost.forecast import LinearModel


def trace(values):
    return ViewTrace("t", np.asarray(values, dtype=np.int64), len(values))


def lstsq_line(views):
    """Independent check: full design-matrix least squares via numpy."""
    hours = np.arange(1, len(views) + 1, dtype=np.float64)
    design = np.column_stack([hours, np.ones_like(hours)])
    (slope, intercept), *_ = np.linalg.lstsq(design, np.asarray(views, float), rcond=None)
    return float(slope), float(intercept)


class TestFitOls:
    def test_collinear(self):
        model = fit_ols(trace([2, 4, 6]))
        assert model.slope == pytest.approx(2.0, abs=1e-12)
        assert model.intercept == pytest.approx(0.0, abs=1e-12)
        assert model.n_points == 3

    def test_constant_series(self):
        model = fit_ols(trace([7] * 24))
        assert model.slope == pytest.approx(0.0, abs=1e-12)
        assert model.intercept == pytest.approx(7.0, abs=1e-12)

    def test_small_example_against_normal_equations(self):
        # views [1,2,2]: slope 1/2, intercept 2/3 (worked by hand)
        model = fit_ols(trace([1, 2, 2]))
        assert model.slope == pytest.approx(0.5, rel=1e-12)
        assert model.intercept == pytest.approx(2.0 / 3.0, rel=1e-12)

    def test_too_short_rejected(self):
        with pytest.raises(ValueError):
            fit_ols(trace([5]))

    def test_matches_lstsq_oracle_on_random_traces(self):
        rng = np.random.default_rng(2024)
        for _ in range(200):
            n_hours = int(rng.integers(2, 200))
            base = rng.uniform(1, 50)
            slope = rng.uniform(-0.5, 0.5)
            rates = np.maximum(base + slope * np.arange(1, n_hours + 1), 0.0)
            views = rng.poisson(rates)
            model = fit_ols(trace(views))
            slope_ref, intercept_ref = lstsq_line(views)
            assert model.slope == pytest.approx(slope_ref, rel=1e-9, abs=1e-12)
            assert model.intercept == pytest.approx(intercept_ref, rel=1e-9, abs=1e-12)

    def test_residual_orthogonality(self):
        rng = np.random.default_rng(99)
        for _ in range(50):
            views = rng.poisson(10.0, size=720)
            model = fit_ols(trace(views))
            hours = np.arange(1, 721)
            residuals = views - (model.slope * hours + model.intercept)
            tol = 1e-9 * np.abs(views).sum()
            assert abs(residuals.sum()) <= tol
            assert abs((hours * residuals).sum()) <= tol

    @given(
        views=st.lists(st.integers(0, 1000), min_size=2, max_size=60),
        shift=st.integers(1, 500),
    )
    @settings(max_examples=150, deadline=None)
    def test_shift_equivariance(self, views, shift):
        base = fit_ols(trace(views))
        shifted = fit_ols(trace([v + shift for v in views]))
        assert shifted.slope == pytest.approx(base.slope, rel=1e-9, abs=1e-9)
        assert shifted.intercept == pytest.approx(base.intercept + shift, rel=1e-9, abs=1e-9)

    @given(
        views=st.lists(st.integers(0, 1000), min_size=2, max_size=60),
        k=st.integers(2, 50),
    )
    @settings(max_examples=150, deadline=None)
    def test_scale_equivariance(self, views, k):
        base = fit_ols(trace(views))
        scaled = fit_ols(trace([v * k for v in views]))
        assert scaled.slope == pytest.approx(k * base.slope, rel=1e-9, abs=1e-9)
        assert scaled.intercept == pytest.approx(k * base.intercept, rel=1e-9, abs=1e-9)


class TestPredict:
    def test_constant_rate(self):
        assert predict_next_period_views(LinearModel(0.0, 10.0, 720), 720) == pytest.approx(
            7200.0
        )

    def test_fully_negative_forecast_clamps_to_zero(self):
        assert predict_next_period_views(LinearModel(-1.0, 100.0, 720), 720) == 0.0

    def test_hand_summation_over_two_hours(self):
        # hours 3 and 4 at 0.1/h: 0.3 + 0.4
        assert predict_next_period_views(LinearModel(0.1, 0.0, 2), 2) == pytest.approx(0.7)

    def test_partial_clamp_sums_only_positive_hours(self):
        # hours 4, 5, 6 at rate 5 - h: 1, 0, 0 after clamping
        assert predict_next_period_views(LinearModel(-1.0, 5.0, 3), 3) == pytest.approx(1.0)

    def test_invalid_period_rejected(self):
        with pytest.raises(ValueError):
            predict_next_period_views(LinearModel(0.0, 1.0, 2), 0)

    @given(
        slope=st.floats(-5, 5),
        intercepts=st.tuples(st.floats(-100, 100), st.floats(0, 200)),
        period=st.integers(1, 400),
    )
    @settings(max_examples=200, deadline=None)
    def test_monotone_in_intercept_and_nonnegative(self, slope, intercepts, period):
        lo = min(intercepts)
        hi = max(intercepts)
        low = predict_next_period_views(LinearModel(slope, lo, 2), period)
        high = predict_next_period_views(LinearModel(slope, hi, 2), period)
        assert 0.0 <= low <= high
        assert np.isfinite(high)


class TestLinearModel:
    def test_rejects_single_point(self):
        with pytest.raises(ValueError):
            LinearModel(1.0, 0.0, 1)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            LinearModel(float("nan"), 0.0, 2)
        with pytest.raises(ValueError):
            LinearModel(0.0, float("inf"), 2)


def test_ols_forecast_composes_fit_and_predict():
    t = trace([2, 4, 6])
    # exact line 2h: hours 4..6 give 8 + 10 + 12
    assert ols_forecast(t) == pytest.approx(30.0, rel=1e-12)
