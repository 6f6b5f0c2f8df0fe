"""Refractive-index models of the medium between the plates.

Three variants: a constant index, the low-frequency quadratic form
n(omega) = n0 + n1*omega^2, and a user-supplied table sampled on the
imaginary-frequency axis.  The quadratic model continues to imaginary
frequency omega -> i*xi as kappa_1 = n0*xi - n1*xi^3, which turns over and
goes negative beyond xi = sqrt(n0/n1); past that point the model has left
its domain, so the lower limit is clamped at zero and the clamp is
reported rather than silently integrated.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Union

import numpy as np
from scipy.interpolate import PchipInterpolator

__all__ = [
    "Constant",
    "Cauchy",
    "Tabulated",
    "DispersionModel",
    "LowerLimit",
    "ValidityReport",
    "UnsupportedModelError",
    "index_of_real_frequency",
    "kappa_lower",
    "validity",
    "load_index_table",
]


class UnsupportedModelError(ValueError):
    """Operation has no meaning for this dispersion model."""


@dataclass(frozen=True)
class Constant:
    """Frequency-independent refractive index."""

    n0: float

    def __post_init__(self):
        if not self.n0 > 0.0:
            raise ValueError(f"refractive index must be positive, got {self.n0}")


@dataclass(frozen=True)
class Cauchy:
    """Quadratic low-frequency dispersion n(omega) = n0 + n1*omega^2.

    n1 carries units of length^2 in natural units and must be non-negative.
    """

    n0: float
    n1: float = 0.0

    def __post_init__(self):
        if not self.n0 > 0.0:
            raise ValueError(f"refractive index must be positive, got {self.n0}")
        if not self.n1 >= 0.0:
            raise ValueError(f"dispersion coefficient must be >= 0, got {self.n1}")


@dataclass(frozen=True)
class Tabulated:
    """Sampled index n(i*xi) on the imaginary-frequency axis.

    Samples must be sorted by strictly increasing xi >= 0 with n > 0.
    Queries use monotone (shape-preserving) cubic interpolation with flat
    extrapolation beyond the table ends, so interpolated values never
    overshoot into n <= 0.
    """

    xi: tuple[float, ...]
    n: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "xi", tuple(float(v) for v in self.xi))
        object.__setattr__(self, "n", tuple(float(v) for v in self.n))
        if len(self.xi) != len(self.n):
            raise ValueError("xi and n columns differ in length")
        if len(self.xi) < 2:
            raise ValueError("need at least two samples")
        if self.xi[0] < 0.0:
            raise ValueError("frequency samples must be non-negative")
        if any(a >= b for a, b in zip(self.xi, self.xi[1:])):
            raise ValueError("frequency samples must be strictly increasing")
        if any(v <= 0.0 for v in self.n):
            raise ValueError("index samples must be positive")

    @cached_property
    def _interpolator(self) -> PchipInterpolator:
        return PchipInterpolator(np.asarray(self.xi), np.asarray(self.n))

    def index_at(self, xi: float) -> float:
        clipped = min(max(xi, self.xi[0]), self.xi[-1])
        return float(self._interpolator(clipped))


DispersionModel = Union[Constant, Cauchy, Tabulated]


class LowerLimit(NamedTuple):
    """Lower integration limit kappa_1 = n(i*xi)*xi with clamp bookkeeping."""

    value: float
    raw: float
    clamped: bool


@dataclass(frozen=True)
class ValidityReport:
    """Trust region of the quadratic dispersion model.

    The perturbative treatment holds for separations above
    ``min_separation`` = 2*pi*sqrt(n1), where the relative size of the
    dispersive correction stays below ``ratio_bound`` = 1/(14*n0^3).
    """

    min_separation: float
    ratio_bound: float

    def is_valid_at(self, separation: float) -> bool:
        return separation > self.min_separation


def index_of_real_frequency(model: DispersionModel, omega: float) -> float:
    """Refractive index at real frequency omega >= 0."""
    if not omega >= 0.0:
        raise ValueError(f"frequency must be non-negative, got {omega}")
    if isinstance(model, Constant):
        return model.n0
    if isinstance(model, Cauchy):
        return model.n0 + model.n1 * omega * omega
    return model.index_at(omega)


def kappa_lower(model: DispersionModel, xi: float) -> LowerLimit:
    """Lower limit n(i*xi)*xi of the momentum integration at imaginary frequency xi.

    For the quadratic model this is n0*xi - n1*xi^3, clamped below at zero;
    ``clamped`` is set whenever the raw value went negative, i.e. the model
    was evaluated beyond its turnover.
    """
    if not xi >= 0.0:
        raise ValueError(f"imaginary frequency must be non-negative, got {xi}")
    if isinstance(model, Constant):
        value = model.n0 * xi
        return LowerLimit(value, value, False)
    if isinstance(model, Cauchy):
        # left-assoc product keeps n1 = 0 exact even for huge xi
        raw = model.n0 * xi - model.n1 * xi * xi * xi
        if raw < 0.0:
            return LowerLimit(0.0, raw, True)
        return LowerLimit(raw, raw, False)
    value = model.index_at(xi) * xi
    return LowerLimit(value, value, False)


def validity(model: DispersionModel) -> ValidityReport:
    """Trust region of the model; undefined for tabulated data."""
    if isinstance(model, Tabulated):
        raise UnsupportedModelError(
            "tabulated index data has no closed validity criterion"
        )
    n1 = model.n1 if isinstance(model, Cauchy) else 0.0
    return ValidityReport(
        min_separation=2.0 * math.pi * math.sqrt(n1),
        ratio_bound=1.0 / (14.0 * model.n0**3),
    )


def load_index_table(path) -> Tabulated:
    """Read a two-column CSV of (xi, n) samples; a single header line is allowed."""
    xi: list[float] = []
    n: list[float] = []
    with open(path, newline="") as handle:
        for lineno, row in enumerate(csv.reader(handle), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) < 2:
                raise ValueError(f"{path}: line {lineno}: expected two columns")
            try:
                x, v = float(row[0]), float(row[1])
            except ValueError:
                if lineno == 1:
                    continue
                raise ValueError(
                    f"{path}: line {lineno}: could not parse {row[:2]!r}"
                ) from None
            xi.append(x)
            n.append(v)
    return Tabulated(tuple(xi), tuple(n))
