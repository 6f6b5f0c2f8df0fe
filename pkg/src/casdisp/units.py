"""Conversion from natural units (hbar = c = 1) to SI, presentation-layer only.

All computation happens in natural units where every formula is exact;
a result is scaled to SI once, on output.  With lengths measured in a unit
of ``u`` meters, an energy per area E (dimension length^-3) becomes
E * hbar*c / u^3 in J/m^2, and a force per area F (length^-4) becomes
F * hbar*c / u^4 in Pa.

hbar*c = 3.161526773e-26 J m to ten significant figures (CODATA values via
scipy.constants: hbar = h/2pi with h exact, c exact).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from scipy.constants import c as _SPEED_OF_LIGHT
from scipy.constants import hbar as _HBAR

__all__ = ["HBAR_C_JOULE_METER", "UnitMode", "UnitSystem", "convert_units"]

HBAR_C_JOULE_METER = _HBAR * _SPEED_OF_LIGHT


class UnitMode(Enum):
    NATURAL = "natural"
    SI = "si"


@dataclass(frozen=True)
class UnitSystem:
    """Output unit choice; SI mode needs the meter value of the length unit."""

    mode: UnitMode = UnitMode.NATURAL
    length_unit_in_meters: Optional[float] = None

    def __post_init__(self):
        if self.mode is UnitMode.SI:
            if self.length_unit_in_meters is None or not self.length_unit_in_meters > 0.0:
                raise ValueError(
                    "SI output needs a positive length unit in meters"
                )


def convert_units(
    value: float, unit_system: UnitSystem, quantity: str = "energy_per_area"
) -> float:
    """Scale a natural-units value to the configured output units.

    ``quantity`` is "energy_per_area" (to J/m^2) or "force_per_area"
    (to Pa).  Natural mode is the identity.
    """
    if quantity not in ("energy_per_area", "force_per_area"):
        raise ValueError(f"unknown quantity kind {quantity!r}")
    if unit_system.mode is UnitMode.NATURAL:
        return value
    unit = unit_system.length_unit_in_meters
    if quantity == "energy_per_area":
        return value * HBAR_C_JOULE_METER / unit**3
    return value * HBAR_C_JOULE_METER / unit**4
