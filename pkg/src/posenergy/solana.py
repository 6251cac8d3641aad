"""Vote/nonvote throughput correction.

Solana's consensus votes are themselves transactions, so its widely reported
throughput mixes consensus overhead with user traffic. Figures comparable to
other networks keep only the nonvote share: each daily record yields the
fraction of transactions that were not votes, reported throughput is scaled
by that fraction, and the postulated maximum throughput is scaled by the
average fraction across records.
"""

from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass
from typing import Iterable

from .core import parse_date
from .units import SECONDS_PER_DAY

# The network operator's postulated peak throughput, votes included.
DEFAULT_POSTULATED_MAX_TPS = 50_000.0


@dataclass(frozen=True)
class VoteRatioRecord:
    """One day of transaction counts split into vote and nonvote traffic."""

    date: dt.date
    nonvote_tx_per_day: int
    total_tx_per_day: int
    reported_tps: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "date", parse_date(self.date))
        nonvote = int(self.nonvote_tx_per_day)
        total = int(self.total_tx_per_day)
        if total <= 0:
            raise ValueError(f"total_tx_per_day must be positive, got {total!r}")
        if not 0 <= nonvote <= total:
            raise ValueError(
                f"nonvote_tx_per_day must lie in [0, total], got {nonvote!r} of {total!r}"
            )
        object.__setattr__(self, "nonvote_tx_per_day", nonvote)
        object.__setattr__(self, "total_tx_per_day", total)
        reported = float(self.reported_tps)
        if not math.isfinite(reported) or reported < 0:
            raise ValueError(f"reported_tps must be finite and non-negative, got {reported!r}")
        object.__setattr__(self, "reported_tps", reported)


def nonvote_ratio(record: VoteRatioRecord) -> float:
    """Share of the day's transactions that were not consensus votes."""
    return record.nonvote_tx_per_day / record.total_tx_per_day


def average_tps(record: VoteRatioRecord) -> float:
    """The day's total traffic as an average rate (exact 86,400 s day)."""
    return record.total_tx_per_day / SECONDS_PER_DAY


def adjust_tps(reported_tps: float, ratio: float) -> float:
    """Scale a vote-inclusive throughput figure down to nonvote traffic."""
    if not math.isfinite(reported_tps) or reported_tps < 0:
        raise ValueError(f"reported_tps must be finite and non-negative, got {reported_tps!r}")
    if not 0.0 <= ratio <= 1.0:
        raise ValueError(f"ratio must lie in [0, 1], got {ratio!r}")
    return reported_tps * ratio


def nonvote_tps(record: VoteRatioRecord) -> float:
    """Nonvote throughput implied by a record's reported rate and its ratio."""
    return adjust_tps(record.reported_tps, nonvote_ratio(record))


def adjusted_max_tps(
    postulated_max: float, records: Iterable[VoteRatioRecord]
) -> float:
    """Scale a postulated maximum throughput by the mean nonvote share."""
    if not math.isfinite(postulated_max) or postulated_max <= 0:
        raise ValueError(f"postulated_max must be positive, got {postulated_max!r}")
    rows = list(records)
    if not rows:
        raise ValueError("no vote ratio records to average")
    mean_ratio = sum(nonvote_ratio(r) for r in rows) / len(rows)
    return postulated_max * mean_ratio
