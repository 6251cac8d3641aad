"""Reference systems (Bitcoin bounds, VisaNet) as annual energy plus throughput."""

from __future__ import annotations

import configparser
import math
import os
from dataclasses import dataclass
from typing import Iterable

from .units import EnergyQuantity, SECONDS_PER_HOUR, SECONDS_PER_YEAR, Unit, as_kwh


@dataclass(frozen=True)
class BaselineRecord:
    """Annual energy and sustained throughput for a non-PoS reference system."""

    name: str
    period_year: int
    annual_energy: EnergyQuantity
    tps: float

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("baseline name must be non-empty")
        if self.annual_energy.value <= 0:
            raise ValueError(f"annual energy must be positive for {self.name!r}")
        tps = float(self.tps)
        if not math.isfinite(tps) or tps <= 0:
            raise ValueError(f"tps must be positive for {self.name!r}, got {self.tps!r}")
        object.__setattr__(self, "tps", tps)


def per_second_energy(record: BaselineRecord) -> float:
    """kWh drawn per second, over a 365-day year."""
    return as_kwh(record.annual_energy) / SECONDS_PER_YEAR


def baseline_per_tx(record: BaselineRecord) -> float:
    """kWh per transaction at the record's sustained throughput."""
    return per_second_energy(record) / record.tps


def load_baselines(path: str | os.PathLike[str]) -> list[BaselineRecord]:
    """Read baseline records from a key-value config file.

    Each section is one record with keys ``year``, ``amount``, ``unit`` and
    ``tps``; extra keys (such as a free-text note) are ignored.
    """
    parser = configparser.ConfigParser()
    if not parser.read(os.fspath(path)):
        raise FileNotFoundError(f"no baseline config at {os.fspath(path)!r}")
    records = []
    for section in parser.sections():
        sec = parser[section]
        try:
            records.append(
                BaselineRecord(
                    name=section,
                    period_year=int(sec["year"]),
                    annual_energy=EnergyQuantity(float(sec["amount"]), Unit(sec["unit"])),
                    tps=float(sec["tps"]),
                )
            )
        except KeyError as exc:
            raise ValueError(f"baseline section [{section}] is missing key {exc.args[0]!r}") from exc
    return records


@dataclass(frozen=True)
class BaselineBand:
    """A baseline, or a lower/upper pair of them, reduced to comparable figures."""

    name: str
    period_year: int
    tps: float
    kwh_per_second_lower: float
    kwh_per_second_upper: float
    kwh_per_tx_lower: float
    kwh_per_tx_upper: float

    @property
    def kw_lower(self) -> float:
        return self.kwh_per_second_lower * SECONDS_PER_HOUR

    @property
    def kw_upper(self) -> float:
        return self.kwh_per_second_upper * SECONDS_PER_HOUR

    @property
    def kwh_per_tx_mid(self) -> float:
        return (self.kwh_per_tx_lower + self.kwh_per_tx_upper) / 2.0


def summarize(records: Iterable[BaselineRecord]) -> list[BaselineBand]:
    """Pair ``<name>-lower``/``<name>-upper`` records into bands.

    Records without those suffixes become degenerate bands (lower equals
    upper). Paired records must agree on throughput and year.
    """
    singles: dict[str, dict[str, BaselineRecord]] = {}
    for record in records:
        stem, _, suffix = record.name.rpartition("-")
        if suffix in ("lower", "upper") and stem:
            singles.setdefault(stem, {})[suffix] = record
        else:
            singles.setdefault(record.name, {})["only"] = record

    bands = []
    for stem in sorted(singles):
        variants = singles[stem]
        if "only" in variants and len(variants) == 1:
            rec = variants["only"]
            lo = hi = rec
        elif set(variants) == {"lower", "upper"}:
            lo, hi = variants["lower"], variants["upper"]
            if lo.tps != hi.tps or lo.period_year != hi.period_year:
                raise ValueError(f"baseline pair {stem!r} disagrees on tps or year")
        else:
            raise ValueError(f"baseline {stem!r} has an incomplete lower/upper pair")
        bands.append(
            BaselineBand(
                name=stem,
                period_year=lo.period_year,
                tps=lo.tps,
                kwh_per_second_lower=per_second_energy(lo),
                kwh_per_second_upper=per_second_energy(hi),
                kwh_per_tx_lower=baseline_per_tx(lo),
                kwh_per_tx_upper=baseline_per_tx(hi),
            )
        )
    return bands
