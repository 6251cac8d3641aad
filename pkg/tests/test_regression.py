"""Least-squares fitting, checked against an independent closed-form oracle.

The oracle below uses the raw (uncentered) normal equations computed with
compensated sums; the implementation uses centered sums. Agreement between
the two routes is the check.
"""

import math
import random

import numpy as np
import pytest

from posenergy.core import NetworkObservation
from posenergy.regression import (
    DegenerateVarianceError,
    InsufficientDataError,
    fit_affine,
    origin_observation,
    predict_validators,
    r_squared,
)


def ols_oracle(xs, ys):
    """Raw normal equations: slope and intercept of the least-squares line."""
    n = len(xs)
    sum_x = math.fsum(xs)
    sum_y = math.fsum(ys)
    sum_xx = math.fsum(x * x for x in xs)
    sum_xy = math.fsum(x * y for x, y in zip(xs, ys))
    slope = (n * sum_xy - sum_x * sum_y) / (n * sum_xx - sum_x * sum_x)
    intercept = (sum_y - slope * sum_x) / n
    mean_y = sum_y / n
    ss_res = math.fsum((y - (intercept + slope * x)) ** 2 for x, y in zip(xs, ys))
    ss_tot = math.fsum((y - mean_y) ** 2 for y in ys)
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return intercept, slope, r2


def obs(network, day, validators, tps):
    return NetworkObservation(network, f"2022-01-{day:02d}", validators, tps)


class TestFitAffine:
    def test_capped_validator_set_without_origin(self):
        # a fixed validator set at any throughput: flat line at the cap
        points = [obs("polkadot", 1, 297, 0.10), obs("polkadot", 2, 297, 0.20)]
        fit = fit_affine(points, include_origin=False)
        assert fit.intercept == pytest.approx(297.0, rel=1e-12)
        assert fit.slope == pytest.approx(0.0, abs=1e-12)
        assert fit.r2 == 1.0
        assert fit.n_points == 2
        assert not fit.origin_included

    def test_collinear_with_origin_is_exact(self):
        points = [obs("near", 1, 10, 2.0), obs("near", 2, 20, 4.0)]
        fit = fit_affine(points, include_origin=True)
        assert fit.intercept == 0.0
        assert fit.slope == 5.0
        assert fit.r2 == 1.0
        assert fit.n_points == 3

    def test_seven_points_match_oracle(self):
        tps = [4.1, 5.3, 6.0, 7.2, 7.9, 8.4, 8.7]
        validators = [980, 1010, 1063, 1105, 1151, 1190, 1227]
        points = [obs("algorand", i + 1, v, t) for i, (t, v) in enumerate(zip(tps, validators))]
        fit = fit_affine(points, include_origin=True)
        want_intercept, want_slope, want_r2 = ols_oracle([0.0] + tps, [0.0] + validators)
        assert fit.intercept == pytest.approx(want_intercept, rel=1e-9)
        assert fit.slope == pytest.approx(want_slope, rel=1e-9)
        assert fit.r2 == pytest.approx(want_r2, rel=1e-9)
        assert fit.n_points == 8

    def test_order_invariant(self):
        points = [
            obs("tezos", 1, 410, 1.2),
            obs("tezos", 2, 440, 0.8),
            obs("tezos", 3, 395, 1.6),
            obs("tezos", 4, 428, 0.9),
        ]
        fit_a = fit_affine(points)
        rng = random.Random(7)
        for _ in range(5):
            shuffled = points[:]
            rng.shuffle(shuffled)
            fit_b = fit_affine(shuffled)
            assert fit_b == fit_a

    def test_duplicate_points_raise_weight(self):
        base = [obs("flow", 1, 100, 1.0), obs("flow", 2, 400, 4.0), obs("flow", 3, 250, 2.0)]
        doubled = base + [obs("flow", 4, 400, 4.0)]
        assert fit_affine(doubled, include_origin=False) != fit_affine(base, include_origin=False)

    def test_origin_changes_offset_data(self):
        # data far from the origin: the injected point must move the line
        points = [obs("polkadot", 1, 297, 0.10), obs("polkadot", 2, 297, 0.20)]
        with_origin = fit_affine(points, include_origin=True)
        without = fit_affine(points, include_origin=False)
        assert with_origin.origin_included
        assert with_origin.slope != without.slope
        assert with_origin.n_points == 3

    def test_empty_rejected(self):
        with pytest.raises(InsufficientDataError):
            fit_affine([])

    def test_single_point_without_origin_rejected(self):
        with pytest.raises(InsufficientDataError):
            fit_affine([obs("near", 1, 158, 6.33)], include_origin=False)

    def test_single_point_with_origin_fits(self):
        fit = fit_affine([obs("near", 1, 158, 6.33)], include_origin=True)
        assert fit.n_points == 2
        assert fit.intercept == pytest.approx(0.0, abs=1e-9)
        assert fit.slope == pytest.approx(158 / 6.33, rel=1e-9)

    def test_coincident_tps_rejected(self):
        points = [obs("tron", 1, 50, 33.4), obs("tron", 2, 60, 33.4)]
        with pytest.raises(DegenerateVarianceError):
            fit_affine(points, include_origin=False)

    def test_mixed_networks_rejected(self):
        points = [obs("tron", 1, 50, 33.4), obs("bnb", 2, 56, 40.0)]
        with pytest.raises(ValueError, match="multiple networks"):
            fit_affine(points)

    def test_oracle_agreement_randomized(self):
        rng = np.random.default_rng(20230131)
        for _ in range(30):
            n = int(rng.integers(2, 11))
            xs = np.sort(rng.uniform(0.5, 900.0, size=n))
            while len(np.unique(xs)) < 2:
                xs = np.sort(rng.uniform(0.5, 900.0, size=n))
            slope_true = rng.uniform(0.5, 30.0)
            intercept_true = rng.uniform(5.0, 4000.0)
            ys = np.rint(intercept_true + slope_true * xs + rng.normal(0, 25.0, size=n))
            ys = np.clip(ys, 0, None)
            points = [obs("ethereum", (i % 27) + 1, int(v), float(t)) for i, (t, v) in enumerate(zip(xs, ys))]
            fit = fit_affine(points, include_origin=False)
            want_intercept, want_slope, want_r2 = ols_oracle([float(v) for v in xs], [float(v) for v in ys])
            assert fit.intercept == pytest.approx(want_intercept, rel=1e-9, abs=1e-9)
            assert fit.slope == pytest.approx(want_slope, rel=1e-9, abs=1e-9)
            assert fit.r2 == pytest.approx(want_r2, rel=1e-9, abs=1e-9)


class TestPredictValidators:
    def test_affine_evaluation(self):
        fit = fit_affine(
            [obs("tezos", 1, 416, 1.0), obs("tezos", 2, 392, 2.0)], include_origin=False
        )
        # interpolating line through the two points: 440 - 24 * tps... checked via endpoints
        assert predict_validators(fit, 1.0) == pytest.approx(416.0, rel=1e-9)
        assert predict_validators(fit, 2.0) == pytest.approx(392.0, rel=1e-9)

    def test_negative_predictions_pass_through(self):
        # a fit like (440.7, -24.6) dips below zero at high throughput
        fit = fit_affine(
            [obs("tezos", 1, 416, 1.0), obs("tezos", 2, 392, 2.0)], include_origin=False
        )
        assert predict_validators(fit, 20.0) < 0

    def test_rejects_negative_tps(self):
        fit = fit_affine([obs("near", 1, 10, 1.0), obs("near", 2, 20, 2.0)])
        with pytest.raises(ValueError):
            predict_validators(fit, -1.0)


class TestRSquared:
    def test_matches_fit_value(self):
        points = [
            obs("hedera", 1, 24, 410.0),
            obs("hedera", 2, 26, 568.45),
            obs("hedera", 3, 25, 505.0),
        ]
        fit = fit_affine(points, include_origin=True)
        scored = r_squared(fit, points + [origin_observation(points)])
        assert scored == pytest.approx(fit.r2, rel=1e-12)

    def test_perfect_line_scores_one(self):
        points = [obs("near", 1, 10, 2.0), obs("near", 2, 20, 4.0)]
        fit = fit_affine(points, include_origin=True)
        assert r_squared(fit, points) == 1.0

    def test_constant_series_flat_fit(self):
        points = [obs("polkadot", 1, 297, 0.10), obs("polkadot", 2, 297, 0.20)]
        fit = fit_affine(points, include_origin=False)
        assert r_squared(fit, points) == 1.0

    def test_bounded_on_random_data(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            n = int(rng.integers(3, 9))
            xs = rng.uniform(0.1, 100.0, size=n)
            ys = rng.integers(0, 5000, size=n)
            points = [obs("bnb", (i % 27) + 1, int(v), float(t)) for i, (t, v) in enumerate(zip(xs, ys))]
            fit = fit_affine(points, include_origin=False)
            assert 0.0 <= fit.r2 <= 1.0

    def test_residual_orthogonality(self):
        # Sum of residuals and tps-weighted residuals vanish for an OLS line.
        rng = np.random.default_rng(99)
        xs = rng.uniform(1.0, 50.0, size=8)
        ys = rng.integers(100, 3000, size=8)
        points = [obs("avalanche", i + 1, int(v), float(t)) for i, (t, v) in enumerate(zip(xs, ys))]
        fit = fit_affine(points, include_origin=False)
        resid = [p.validators - predict_validators(fit, p.tps) for p in points]
        scale = len(points) * max(abs(float(v)) for v in ys)
        assert abs(math.fsum(resid)) <= 1e-9 * scale
        assert abs(math.fsum(r * p.tps for r, p in zip(resid, points))) <= 1e-9 * scale * max(xs)
