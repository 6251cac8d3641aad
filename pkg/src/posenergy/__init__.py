"""Throughput-controlled energy consumption estimates for proof-of-stake networks.

The package models a network's consensus-layer power as validator count times
per-validator draw, bounds that draw with optimistic and pessimistic hardware
figures, fits validator count against throughput to extrapolate over a whole
throughput range, and benchmarks the result against Bitcoin and VisaNet
reference figures.
"""

from .baselines import (
    BaselineBand,
    BaselineRecord,
    baseline_per_tx,
    load_baselines,
    per_second_energy,
    summarize,
)
from .core import (
    NetworkObservation,
    NetworkProfile,
    ValidatorPowerBounds,
    energy_per_tx,
    global_power,
    parse_date,
    validate_network_id,
)
from .estimator import (
    BandPoint,
    ConsumptionBand,
    ContemporaryEstimate,
    Erratum,
    GridDomainError,
    ReportedEstimate,
    consumption_band,
    contemporary_estimate,
    default_grid,
    find_errata,
    latest_observation,
)
from .ingestion import (
    DuplicateObservationError,
    FetchError,
    FetcherSpec,
    MergeConflictError,
    SchemaDriftError,
    Snapshot,
    SnapshotFormatError,
    bundled,
    fetch_all,
    fetch_observation,
    load_bounds,
    load_profiles,
    load_reported,
    load_snapshots,
    merge,
    write_snapshot,
)
from .regression import (
    DegenerateVarianceError,
    InsufficientDataError,
    RegressionFit,
    fit_affine,
    origin_observation,
    predict_validators,
    r_squared,
)
from .solana import (
    VoteRatioRecord,
    adjust_tps,
    adjusted_max_tps,
    average_tps,
    nonvote_ratio,
    nonvote_tps,
)
from .units import (
    EnergyQuantity,
    IncompatibleUnitsError,
    Unit,
    as_kwh,
    convert,
)

__version__ = "0.1.0"

__all__ = [
    "BandPoint",
    "BaselineBand",
    "BaselineRecord",
    "ConsumptionBand",
    "ContemporaryEstimate",
    "DegenerateVarianceError",
    "DuplicateObservationError",
    "EnergyQuantity",
    "Erratum",
    "FetchError",
    "FetcherSpec",
    "GridDomainError",
    "IncompatibleUnitsError",
    "InsufficientDataError",
    "MergeConflictError",
    "NetworkObservation",
    "NetworkProfile",
    "RegressionFit",
    "ReportedEstimate",
    "SchemaDriftError",
    "Snapshot",
    "SnapshotFormatError",
    "Unit",
    "ValidatorPowerBounds",
    "VoteRatioRecord",
    "adjust_tps",
    "adjusted_max_tps",
    "as_kwh",
    "average_tps",
    "baseline_per_tx",
    "bundled",
    "consumption_band",
    "contemporary_estimate",
    "convert",
    "default_grid",
    "energy_per_tx",
    "fetch_all",
    "fetch_observation",
    "find_errata",
    "fit_affine",
    "global_power",
    "latest_observation",
    "load_baselines",
    "load_bounds",
    "load_profiles",
    "load_reported",
    "load_snapshots",
    "merge",
    "nonvote_ratio",
    "nonvote_tps",
    "origin_observation",
    "parse_date",
    "per_second_energy",
    "predict_validators",
    "r_squared",
    "summarize",
    "validate_network_id",
    "write_snapshot",
]
