"""Energy and power quantities with exact conversion factors.

Quantities keep the unit they were created with; conversions apply a single
exact factor through the dimension's base unit (watts for power, joules for
energy), so round trips stay within floating-point error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

JOULES_PER_KWH = 3.6e6
WATTS_PER_KW = 1_000.0
SECONDS_PER_HOUR = 3_600
SECONDS_PER_DAY = 86_400
SECONDS_PER_YEAR = 31_536_000  # 365-day year


class Unit(str, Enum):
    """Units accepted by :class:`EnergyQuantity`."""

    W = "W"
    KW = "kW"
    KWH = "kWh"
    J = "J"
    GJ = "GJ"
    TWH = "TWh"


# unit -> (dimension, factor to the dimension's base unit: W or J)
_FACTORS: dict[Unit, tuple[str, float]] = {
    Unit.W: ("power", 1.0),
    Unit.KW: ("power", WATTS_PER_KW),
    Unit.J: ("energy", 1.0),
    Unit.KWH: ("energy", JOULES_PER_KWH),
    Unit.GJ: ("energy", 1e9),
    Unit.TWH: ("energy", 1e9 * JOULES_PER_KWH),
}


class IncompatibleUnitsError(ValueError):
    """Raised when converting between power and energy units."""


@dataclass(frozen=True)
class EnergyQuantity:
    """A non-negative amount expressed in one of the supported units."""

    value: float
    unit: Unit

    def __post_init__(self) -> None:
        object.__setattr__(self, "unit", Unit(self.unit))
        value = float(self.value)
        if not math.isfinite(value) or value < 0:
            raise ValueError(f"quantity must be finite and non-negative, got {self.value!r}")
        object.__setattr__(self, "value", value)

    def to(self, target: Unit | str) -> EnergyQuantity:
        return convert(self, target)


def dimension(unit: Unit | str) -> str:
    """Return ``"power"`` or ``"energy"`` for a unit."""
    return _FACTORS[Unit(unit)][0]


def convert(quantity: EnergyQuantity, target: Unit | str) -> EnergyQuantity:
    """Convert a quantity to a dimensionally compatible unit.

    Args:
        quantity: the amount to convert.
        target: the destination unit.

    Returns:
        A new quantity expressed in ``target``.

    Raises:
        IncompatibleUnitsError: for power/energy crossings; there is no
            implicit time base that would make those well defined.
    """
    target = Unit(target)
    src_dim, src_factor = _FACTORS[quantity.unit]
    dst_dim, dst_factor = _FACTORS[target]
    if src_dim != dst_dim:
        raise IncompatibleUnitsError(
            f"cannot convert {quantity.unit.value} ({src_dim}) to {target.value} ({dst_dim})"
        )
    return EnergyQuantity(quantity.value * (src_factor / dst_factor), target)


def as_kwh(quantity: EnergyQuantity) -> float:
    """Shorthand for the kWh value of an energy quantity."""
    return convert(quantity, Unit.KWH).value
