"""Ordinary least squares fit of validator count against throughput.

The model is affine: ``validators = intercept + slope * tps``. Networks with
a fixed validator set show up as a flat line (slope near zero); networks that
recruit validators with demand show a positive slope.

The optional origin point encodes the assumption that a network processing
nothing runs no validators. It enters the fit as one ordinary observation
dated at the start of the series, with the same weight as any other point,
not as a hard constraint on the intercept.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import NetworkObservation, _check_finite

# Relative variance (against the squared largest tps) below which the slope
# is considered unidentifiable.
_VARIANCE_FLOOR = 1e-12


class InsufficientDataError(ValueError):
    """Fewer than two points available for a fit."""


class DegenerateVarianceError(ValueError):
    """All throughput values coincide; the slope is unidentifiable."""


@dataclass(frozen=True)
class RegressionFit:
    """Fitted affine parameters for one network.

    ``intercept`` is the modelled validator count at zero throughput and
    ``slope`` the validators gained per unit of throughput.
    """

    network: str
    intercept: float
    slope: float
    r2: float
    n_points: int
    origin_included: bool


def origin_observation(observations: list[NetworkObservation]) -> NetworkObservation:
    """Synthetic zero-throughput, zero-validator point dated at the series start."""
    t0 = min(o.date for o in observations)
    return NetworkObservation(observations[0].network, t0, 0, 0.0, synthetic=True)


def fit_affine(
    observations: Iterable[NetworkObservation], include_origin: bool = True
) -> RegressionFit:
    """Fit validators on tps by least squares, optionally adding the origin.

    Points are sorted internally, so the result does not depend on input
    order. Duplicate rows are kept; they legitimately raise the weight of
    that point.

    Raises:
        InsufficientDataError: fewer than two points after origin injection.
        DegenerateVarianceError: all throughput values coincide.
        ValueError: observations span more than one network.
    """
    obs = list(observations)
    if not obs:
        raise InsufficientDataError("no observations to fit")
    networks = {o.network for o in obs}
    if len(networks) != 1:
        raise ValueError(f"observations span multiple networks: {sorted(networks)}")
    network = obs[0].network
    if include_origin:
        obs.append(origin_observation(obs))
    points = sorted(obs, key=lambda o: (o.tps, o.validators, o.date.isoformat()))
    if len(points) < 2:
        raise InsufficientDataError(f"need at least 2 points, got {len(points)}")

    x = np.array([p.tps for p in points], dtype=float)
    y = np.array([float(p.validators) for p in points], dtype=float)
    x_scale = float(np.max(np.abs(x)))
    dx = x - x.mean()
    s_xx = float(dx @ dx)
    if s_xx / len(points) <= _VARIANCE_FLOOR * x_scale * x_scale:
        raise DegenerateVarianceError(
            f"throughput values for {network!r} have no usable variance"
        )
    slope = float(dx @ (y - y.mean())) / s_xx
    intercept = float(y.mean()) - slope * float(x.mean())
    return RegressionFit(
        network=network,
        intercept=intercept,
        slope=slope,
        r2=_coefficient_of_determination(intercept, slope, x, y),
        n_points=len(points),
        origin_included=include_origin,
    )


def predict_validators(fit: RegressionFit, tps: float) -> float:
    """Validator count the fit predicts at a throughput.

    May be fractional, and negative for downward-sloping fits; consumers
    decide what to do with non-physical predictions.
    """
    rate = _check_finite("tps", tps)
    if rate < 0:
        raise ValueError(f"tps must be non-negative, got {rate!r}")
    return fit.intercept + fit.slope * rate


def r_squared(fit: RegressionFit, observations: Iterable[NetworkObservation]) -> float:
    """Coefficient of determination of ``fit`` over a point set.

    Pass the same points the fit was produced from (including the origin
    point if one was injected) to recover the fit's own ``r2``.
    """
    points = list(observations)
    if not points:
        raise InsufficientDataError("no observations to score")
    x = np.array([p.tps for p in points], dtype=float)
    y = np.array([float(p.validators) for p in points], dtype=float)
    return _coefficient_of_determination(fit.intercept, fit.slope, x, y)


def _coefficient_of_determination(
    intercept: float, slope: float, x: np.ndarray, y: np.ndarray
) -> float:
    resid = y - (intercept + slope * x)
    ss_res = float(resid @ resid)
    dy = y - y.mean()
    ss_tot = float(dy @ dy)
    if ss_tot == 0.0:
        # A constant series is explained exactly by a flat fit through it.
        return 1.0 if ss_res == 0.0 else 0.0
    return min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
