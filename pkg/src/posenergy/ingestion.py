"""Snapshot files, merge rules, and optional live explorer fetchers.

Snapshots are small CSV files with a fixed header. Rows normally carry a
validator count; rows that instead carry vote/nonvote day counts with an
empty validators cell contribute vote-ratio records only (historical rows
for which no validator count was recorded). A row may carry both, in which
case it yields an observation and a vote-ratio record.
"""

from __future__ import annotations

import csv
import datetime as dt
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

import requests

from .core import (
    NetworkObservation,
    NetworkProfile,
    ValidatorPowerBounds,
    parse_date,
    validate_network_id,
)
from .estimator import ReportedEstimate
from .solana import VoteRatioRecord

OBSERVATION_HEADER = (
    "network",
    "date",
    "validators",
    "tps",
    "nonvote_per_day",
    "total_per_day",
    "provenance",
)
_REQUIRED_COLUMNS = ("network", "date", "validators", "tps")
_TPS_DIVISORS = {"per-second": 1.0, "per-hour": 3_600.0, "per-day": 86_400.0}


class SnapshotFormatError(ValueError):
    """A snapshot file failed to parse; the message names the row."""


class DuplicateObservationError(ValueError):
    """Two observation rows in one file share a (network, date) key."""


class MergeConflictError(ValueError):
    """Observation sets disagree about a (network, date) pair."""


class FetchError(RuntimeError):
    """Endpoint unreachable or its response unusable."""


class SchemaDriftError(RuntimeError):
    """A mapped field is missing from an endpoint response."""


@dataclass(frozen=True)
class Snapshot:
    """Observations plus any vote-ratio records found in the same file."""

    observations: tuple[NetworkObservation, ...]
    vote_records: tuple[VoteRatioRecord, ...]


def bundled(name: str) -> Path:
    """Path of a data file shipped with the package."""
    return Path(str(resources.files("posenergy").joinpath("data", name)))


def load_snapshots(path: str | os.PathLike[str]) -> Snapshot:
    """Load one snapshot CSV.

    Raises:
        SnapshotFormatError: missing header, missing columns, or a cell that
            does not parse (the message carries the row number).
        DuplicateObservationError: repeated (network, date) observation rows.
    """
    observations: list[NetworkObservation] = []
    votes: list[VoteRatioRecord] = []
    seen: set[tuple[str, dt.date]] = set()
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise SnapshotFormatError(f"{os.fspath(path)}: empty file, expected a header row")
        missing = [c for c in _REQUIRED_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise SnapshotFormatError(f"{os.fspath(path)}: missing columns {missing}")
        for number, row in enumerate(reader, start=2):
            try:
                observation, vote = _parse_row(row)
            except ValueError as exc:
                raise SnapshotFormatError(f"{os.fspath(path)} row {number}: {exc}") from exc
            if observation is not None:
                key = (observation.network, observation.date)
                if key in seen:
                    raise DuplicateObservationError(
                        f"{os.fspath(path)} row {number}: duplicate observation for "
                        f"({key[0]}, {key[1].isoformat()})"
                    )
                seen.add(key)
                observations.append(observation)
            if vote is not None:
                votes.append(vote)
    return Snapshot(tuple(observations), tuple(votes))


def _parse_row(
    row: dict[str, str | None],
) -> tuple[NetworkObservation | None, VoteRatioRecord | None]:
    def cell(name: str) -> str:
        return (row.get(name) or "").strip()

    network = validate_network_id(cell("network"))
    date = parse_date(cell("date"))
    tps = float(cell("tps"))
    validators_cell = cell("validators")
    nonvote_cell = cell("nonvote_per_day")
    total_cell = cell("total_per_day")
    if bool(nonvote_cell) != bool(total_cell):
        raise ValueError("nonvote_per_day and total_per_day must appear together")

    observation = None
    if validators_cell:
        observation = NetworkObservation(
            network, date, int(validators_cell), tps, provenance=cell("provenance")
        )
    elif not nonvote_cell:
        raise ValueError("validators cell is empty and no vote counts are present")

    vote = None
    if nonvote_cell:
        vote = VoteRatioRecord(
            date=date,
            nonvote_tx_per_day=int(nonvote_cell),
            total_tx_per_day=int(total_cell),
            reported_tps=tps,
        )
    return observation, vote


def merge(*observation_sets: Iterable[NetworkObservation]) -> list[NetworkObservation]:
    """Union observation sets into one canonical, sorted, duplicate-free list.

    Rows that are exactly equal collapse to one; rows sharing (network, date)
    but differing in any field are rejected, with both values reported.
    """
    buckets: dict[tuple[str, dt.date, bool], list[NetworkObservation]] = {}
    for group in observation_sets:
        for obs in group:
            bucket = buckets.setdefault((obs.network, obs.date, obs.synthetic), [])
            if obs not in bucket:
                bucket.append(obs)
    conflicts = [
        f"({key[0]}, {key[1].isoformat()}): "
        + " vs ".join(f"validators={o.validators} tps={o.tps!r}" for o in rows)
        for key, rows in sorted(buckets.items(), key=lambda kv: (kv[0][0], kv[0][1]))
        if len(rows) > 1
    ]
    if conflicts:
        raise MergeConflictError("conflicting observations: " + "; ".join(conflicts))
    return sorted(
        (rows[0] for rows in buckets.values()),
        key=lambda o: (o.network, o.date, o.synthetic),
    )


def write_snapshot(
    path: str | os.PathLike[str],
    observations: Iterable[NetworkObservation],
    vote_records: Iterable[VoteRatioRecord] = (),
) -> None:
    """Write the unified CSV schema; inverse of :func:`load_snapshots`.

    Rows come out in canonical order: observations sorted by (network, date),
    then any vote records that did not fold into an observation row, sorted
    by date. A vote record folds into an observation row when the two share
    a date and the reported throughput.
    """
    rows = sorted(observations, key=lambda o: (o.network, o.date))
    pending = sorted(vote_records, key=lambda v: (v.date, v.reported_tps))

    def take_match(obs: NetworkObservation) -> VoteRatioRecord | None:
        for index, record in enumerate(pending):
            if record.date == obs.date and record.reported_tps == obs.tps:
                return pending.pop(index)
        return None

    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(OBSERVATION_HEADER)
        for obs in rows:
            if obs.synthetic:
                raise ValueError("synthetic observations are fit-time artifacts; not serialized")
            vote = take_match(obs)
            writer.writerow(
                (
                    obs.network,
                    obs.date.isoformat(),
                    obs.validators,
                    repr(obs.tps),
                    vote.nonvote_tx_per_day if vote else "",
                    vote.total_tx_per_day if vote else "",
                    obs.provenance,
                )
            )
        for vote in pending:
            writer.writerow(
                (
                    "solana",
                    vote.date.isoformat(),
                    "",
                    repr(vote.reported_tps),
                    vote.nonvote_tx_per_day,
                    vote.total_tx_per_day,
                    "",
                )
            )


def load_bounds(path: str | os.PathLike[str]) -> dict[str, ValidatorPowerBounds]:
    """Read per-validator power bounds, keyed by network."""
    out: dict[str, ValidatorPowerBounds] = {}
    for number, row in _read_csv(path, ("network", "lower_w", "upper_w")):
        try:
            bounds = ValidatorPowerBounds(
                network=row["network"].strip(),
                lower_w=float(row["lower_w"]),
                upper_w=float(row["upper_w"]),
                source_note=(row.get("source") or "").strip(),
            )
        except ValueError as exc:
            raise SnapshotFormatError(f"{os.fspath(path)} row {number}: {exc}") from exc
        if bounds.network in out:
            raise SnapshotFormatError(
                f"{os.fspath(path)} row {number}: duplicate bounds for {bounds.network!r}"
            )
        out[bounds.network] = bounds
    return out


def load_profiles(
    path: str | os.PathLike[str], bounds: dict[str, ValidatorPowerBounds]
) -> dict[str, NetworkProfile]:
    """Read throughput profiles and attach each network's power bounds."""
    out: dict[str, NetworkProfile] = {}
    for number, row in _read_csv(path, ("network", "max_tps")):
        network = row["network"].strip()
        if network not in bounds:
            raise SnapshotFormatError(
                f"{os.fspath(path)} row {number}: no power bounds for {network!r}"
            )
        try:
            profile = NetworkProfile(network, bounds[network], float(row["max_tps"]))
        except ValueError as exc:
            raise SnapshotFormatError(f"{os.fspath(path)} row {number}: {exc}") from exc
        if network in out:
            raise SnapshotFormatError(
                f"{os.fspath(path)} row {number}: duplicate profile for {network!r}"
            )
        out[network] = profile
    return out


def load_reported(path: str | os.PathLike[str]) -> dict[str, ReportedEstimate]:
    """Read published reference estimates used by the erratum cross-check."""
    out: dict[str, ReportedEstimate] = {}
    for number, row in _read_csv(path, ("name", "global_kw", "kwh_per_tx")):
        try:
            tps_cell = (row.get("tps") or "").strip()
            validators_cell = (row.get("validators") or "").strip()
            estimate = ReportedEstimate(
                name=row["name"].strip(),
                global_kw=float(row["global_kw"]),
                kwh_per_tx=float(row["kwh_per_tx"]),
                tps=float(tps_cell) if tps_cell else None,
                validators=int(validators_cell) if validators_cell else None,
            )
        except ValueError as exc:
            raise SnapshotFormatError(f"{os.fspath(path)} row {number}: {exc}") from exc
        out[estimate.name] = estimate
    return out


def _read_csv(path: str | os.PathLike[str], required: tuple[str, ...]):
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise SnapshotFormatError(f"{os.fspath(path)}: empty file, expected a header row")
        missing = [c for c in required if c not in reader.fieldnames]
        if missing:
            raise SnapshotFormatError(f"{os.fspath(path)}: missing columns {missing}")
        for number, row in enumerate(reader, start=2):
            yield number, row


@dataclass(frozen=True)
class FetcherSpec:
    """Mapping from one JSON endpoint to an observation.

    ``validators_field`` and ``tps_field`` are dotted paths into the response
    payload (list indices allowed, e.g. ``"data.nodes.0.count"``).
    """

    network: str
    url: str
    validators_field: str
    tps_field: str
    tps_unit: str = "per-second"
    timeout: float = 30.0

    def __post_init__(self) -> None:
        validate_network_id(self.network)
        if self.tps_unit not in _TPS_DIVISORS:
            raise ValueError(
                f"tps_unit must be one of {sorted(_TPS_DIVISORS)}, got {self.tps_unit!r}"
            )
        if self.timeout <= 0:
            raise ValueError(f"timeout must be positive, got {self.timeout!r}")


def _resolve_field(payload: object, dotted: str) -> object:
    current = payload
    for part in dotted.split("."):
        if isinstance(current, dict) and part in current:
            current = current[part]
        elif isinstance(current, list):
            try:
                current = current[int(part)]
            except (ValueError, IndexError) as exc:
                raise KeyError(dotted) from exc
        else:
            raise KeyError(dotted)
    return current


def fetch_observation(
    spec: FetcherSpec, at: dt.date | dt.datetime | None = None
) -> NetworkObservation:
    """Fetch one observation from a live endpoint.

    Raises:
        FetchError: the endpoint is unreachable, returns an error status, or
            does not return JSON.
        SchemaDriftError: the payload no longer carries a mapped field.
    """
    try:
        response = requests.get(spec.url, timeout=spec.timeout)
        response.raise_for_status()
        payload = response.json()
    except requests.RequestException as exc:
        raise FetchError(f"{spec.network}: {spec.url}: {exc}") from exc
    except ValueError as exc:
        raise FetchError(f"{spec.network}: {spec.url}: response is not JSON: {exc}") from exc
    try:
        raw_validators = _resolve_field(payload, spec.validators_field)
        raw_tps = _resolve_field(payload, spec.tps_field)
    except KeyError as exc:
        raise SchemaDriftError(
            f"{spec.network}: field {exc.args[0]!r} missing from response of {spec.url}"
        ) from exc
    if at is None:
        date = dt.datetime.now(dt.timezone.utc).date()
    else:
        date = parse_date(at)
    return NetworkObservation(
        spec.network,
        date,
        int(float(raw_validators)),
        float(raw_tps) / _TPS_DIVISORS[spec.tps_unit],
        provenance=f"fetched from {spec.url} ({spec.tps_unit})",
    )


def fetch_all(
    specs: Iterable[FetcherSpec],
    at: dt.date | dt.datetime | None = None,
    max_workers: int = 4,
) -> tuple[list[NetworkObservation], list[Exception]]:
    """Fetch many endpoints with bounded parallelism.

    Individual failures are collected rather than raised, so one broken
    explorer does not sink a batch run. Results pass through :func:`merge`,
    which gives them a deterministic order.
    """
    spec_list = list(specs)
    observations: list[NetworkObservation] = []
    errors: list[Exception] = []
    if not spec_list:
        return [], []
    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as pool:
        for outcome in pool.map(lambda s: _try_fetch(s, at), spec_list):
            if isinstance(outcome, Exception):
                errors.append(outcome)
            else:
                observations.append(outcome)
    return merge(observations), errors


def _try_fetch(
    spec: FetcherSpec, at: dt.date | dt.datetime | None
) -> NetworkObservation | Exception:
    try:
        return fetch_observation(spec, at=at)
    except (FetchError, SchemaDriftError, ValueError) as exc:
        return exc
