"""Domain types and the pointwise energy model for validator networks.

The model prices a network's consensus layer as validator count times
per-validator power draw; dividing that by throughput gives the energy
attributable to a single transaction.
"""

from __future__ import annotations

import datetime as dt
import math
import re
from dataclasses import dataclass

from .units import JOULES_PER_KWH, WATTS_PER_KW

_NETWORK_ID_RE = re.compile(r"[a-z0-9][a-z0-9_-]*")


def validate_network_id(name: str) -> str:
    """Validate a short lowercase network identifier and return it."""
    if not isinstance(name, str) or not _NETWORK_ID_RE.fullmatch(name):
        raise ValueError(f"invalid network id {name!r} (want lowercase ASCII, e.g. 'hedera')")
    return name


def parse_date(value: dt.date | str) -> dt.date:
    """Coerce an ISO-8601 string (or date) to a date."""
    if isinstance(value, dt.datetime):
        return value.date()
    if isinstance(value, dt.date):
        return value
    if isinstance(value, str):
        try:
            return dt.date.fromisoformat(value)
        except ValueError as exc:
            raise ValueError(f"invalid date {value!r} (want ISO-8601, e.g. 2022-12-11)") from exc
    raise ValueError(f"invalid date {value!r} (want ISO-8601)")


def _check_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class NetworkObservation:
    """One dated measurement of validator count and throughput for a network.

    ``synthetic`` marks points injected by the fitting step (the
    zero-throughput origin assumption); such points never come from snapshot
    files.
    """

    network: str
    date: dt.date
    validators: int
    tps: float
    synthetic: bool = False
    provenance: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "network", validate_network_id(self.network))
        object.__setattr__(self, "date", parse_date(self.date))
        validators = int(self.validators)
        if validators != self.validators or validators < 0:
            raise ValueError(f"validators must be a non-negative integer, got {self.validators!r}")
        object.__setattr__(self, "validators", validators)
        tps = _check_finite("tps", self.tps)
        if tps < 0:
            raise ValueError(f"tps must be non-negative, got {tps!r}")
        object.__setattr__(self, "tps", tps)


@dataclass(frozen=True)
class ValidatorPowerBounds:
    """Optimistic and pessimistic per-validator power draw, in watts."""

    network: str
    lower_w: float
    upper_w: float
    source_note: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "network", validate_network_id(self.network))
        lower = _check_finite("lower_w", self.lower_w)
        upper = _check_finite("upper_w", self.upper_w)
        if not 0 < lower <= upper:
            raise ValueError(
                f"power bounds must satisfy 0 < lower <= upper, got ({lower!r}, {upper!r})"
            )
        object.__setattr__(self, "lower_w", lower)
        object.__setattr__(self, "upper_w", upper)

    @property
    def mid_w(self) -> float:
        """Arithmetic mean of the two bounds, used for mid estimates."""
        return (self.lower_w + self.upper_w) / 2.0


@dataclass(frozen=True)
class NetworkProfile:
    """Power bounds plus the throughput domain a network can be extrapolated over."""

    network: str
    bounds: ValidatorPowerBounds
    max_tps: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "network", validate_network_id(self.network))
        if self.bounds.network != self.network:
            raise ValueError(
                f"profile for {self.network!r} carries bounds for {self.bounds.network!r}"
            )
        max_tps = _check_finite("max_tps", self.max_tps)
        if max_tps <= 0:
            raise ValueError(f"max_tps must be positive, got {max_tps!r}")
        object.__setattr__(self, "max_tps", max_tps)


def global_power(n_validators: float, watts_per_validator: float) -> float:
    """Whole-network power draw in kW for ``n_validators`` at the given draw each.

    ``n_validators`` may be fractional (predictions from a fitted model are).
    """
    n = _check_finite("n_validators", n_validators)
    watts = _check_finite("watts_per_validator", watts_per_validator)
    if n < 0:
        raise ValueError(f"n_validators must be non-negative, got {n!r}")
    if watts <= 0:
        raise ValueError(f"watts_per_validator must be positive, got {watts!r}")
    return n * watts / WATTS_PER_KW


def energy_per_tx(n_validators: float, watts_per_validator: float, tps: float) -> float:
    """Energy per transaction, in kWh, at a given throughput.

    Network watts divided by transactions per second is joules per
    transaction; the result is expressed in kWh. Undefined at zero
    throughput, where the quotient diverges.
    """
    n = _check_finite("n_validators", n_validators)
    watts = _check_finite("watts_per_validator", watts_per_validator)
    rate = _check_finite("tps", tps)
    if n < 0:
        raise ValueError(f"n_validators must be non-negative, got {n!r}")
    if watts <= 0:
        raise ValueError(f"watts_per_validator must be positive, got {watts!r}")
    if rate <= 0:
        raise ValueError("per-transaction energy is undefined at zero throughput")
    return (n * watts) / (rate * JOULES_PER_KWH)
