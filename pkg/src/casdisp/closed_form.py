"""Closed-form energies and forces in natural units (hbar = c = 1).

For plates a distance L apart with a medium of constant index n0, the
zero-point energy per unit plate area is E0 = -pi^2/(720*n0*L^3).  A
quadratic dispersion n(omega) = n0 + n1*omega^2 adds, to first order,
dE = -n1*pi^4/(2520*n0^4*L^5), so that

    E = -(pi^2 / (720*L^3*n0)) * (1 + 2*pi^2*n1 / (7*n0^3*L^2)).

Forces per unit area follow from F = -dE/dL.  An optional boundary-local
term E_s = c_s/L^4 with a user-supplied coefficient can be switched in; its
force contribution then falls off as 1/L^5.  Energies per area carry
dimension length^-3, forces per area length^-4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .dispersion import (
    Cauchy,
    Constant,
    DispersionModel,
    Tabulated,
    UnsupportedModelError,
)

__all__ = [
    "Method",
    "SurfaceTermSpec",
    "Scenario",
    "EnergyBreakdown",
    "mode_frequency",
    "e0_analytic",
    "delta_e_analytic",
    "surface_energy",
    "total_energy_analytic",
    "force_analytic",
    "vacuum_force",
]


class Method(Enum):
    ANALYTIC = "analytic"
    LIFSHITZ = "lifshitz"


@dataclass(frozen=True)
class SurfaceTermSpec:
    """Coefficient of the boundary term E_s = c_s / L^4 (sign free)."""

    c_s: float

    def __post_init__(self):
        if not math.isfinite(self.c_s):
            raise ValueError(f"surface coefficient must be finite, got {self.c_s}")


@dataclass(frozen=True)
class Scenario:
    """Plate separation, medium model and optional surface term: the full problem."""

    L: float
    model: DispersionModel
    surface: Optional[SurfaceTermSpec] = None

    def __post_init__(self):
        if not self.L > 0.0:
            raise ValueError(f"separation must be positive, got {self.L}")


@dataclass(frozen=True)
class EnergyBreakdown:
    """Energy per unit plate area, split by origin.

    ``beyond_validity`` marks results computed outside the dispersion
    model's trust region (separation at or below 2*pi*sqrt(n1), or a
    clamped lower integration limit); the numbers remain evaluable
    mathematics and are reported anyway.
    """

    e0: float
    delta_e: float
    e_surface: float
    total: float
    method: Method
    error_estimate: float
    beyond_validity: bool = False


def mode_frequency(j: int, k_t: float, L: float, n0: float) -> float:
    """Frequency of the j-th standing wave at transverse wave number k_t."""
    if j < 1 or j != int(j):
        raise ValueError(f"mode number must be a positive integer, got {j}")
    if not k_t >= 0.0:
        raise ValueError(f"transverse wave number must be >= 0, got {k_t}")
    if not L > 0.0:
        raise ValueError(f"separation must be positive, got {L}")
    if not n0 > 0.0:
        raise ValueError(f"refractive index must be positive, got {n0}")
    return math.hypot(k_t, j * math.pi / L) / n0


def e0_analytic(L: float, n0: float) -> float:
    """Dispersion-free zero-point energy per area, -pi^2/(720*n0*L^3)."""
    if not L > 0.0:
        raise ValueError(f"separation must be positive, got {L}")
    if not n0 > 0.0:
        raise ValueError(f"refractive index must be positive, got {n0}")
    return -math.pi**2 / (720.0 * n0 * L**3)


def delta_e_analytic(L: float, n0: float, n1: float) -> float:
    """First-order dispersive correction per area, -n1*pi^4/(2520*n0^4*L^5)."""
    if not L > 0.0:
        raise ValueError(f"separation must be positive, got {L}")
    if not n0 > 0.0:
        raise ValueError(f"refractive index must be positive, got {n0}")
    if not n1 >= 0.0:
        raise ValueError(f"dispersion coefficient must be >= 0, got {n1}")
    if n1 == 0.0:
        return 0.0
    return -n1 * math.pi**4 / (2520.0 * n0**4 * L**5)


def surface_energy(L: float, spec: SurfaceTermSpec) -> float:
    """Boundary term c_s / L^4."""
    if not L > 0.0:
        raise ValueError(f"separation must be positive, got {L}")
    return spec.c_s / L**4


def _cauchy_coefficients(model: DispersionModel) -> tuple[float, float]:
    if isinstance(model, Tabulated):
        raise UnsupportedModelError("no closed form for tabulated index data")
    if isinstance(model, Constant):
        return model.n0, 0.0
    return model.n0, model.n1


def _below_validity(L: float, n1: float) -> bool:
    return n1 > 0.0 and L <= 2.0 * math.pi * math.sqrt(n1)


def total_energy_analytic(scenario: Scenario) -> EnergyBreakdown:
    """Closed-form energy breakdown for a constant or quadratic index."""
    n0, n1 = _cauchy_coefficients(scenario.model)
    e0 = e0_analytic(scenario.L, n0)
    delta = delta_e_analytic(scenario.L, n0, n1)
    e_s = surface_energy(scenario.L, scenario.surface) if scenario.surface else 0.0
    return EnergyBreakdown(
        e0=e0,
        delta_e=delta,
        e_surface=e_s,
        total=e0 + delta + e_s,
        method=Method.ANALYTIC,
        error_estimate=0.0,
        beyond_validity=_below_validity(scenario.L, n1),
    )


def force_analytic(scenario: Scenario) -> float:
    """Force per unit area, -d(total energy)/dL differentiated symbolically."""
    n0, n1 = _cauchy_coefficients(scenario.model)
    L = scenario.L
    force = -math.pi**2 / (240.0 * n0 * L**4)
    force -= n1 * math.pi**4 / (504.0 * n0**4 * L**6)
    if scenario.surface is not None:
        force += 4.0 * scenario.surface.c_s / L**5
    return force


def vacuum_force(L: float) -> float:
    """Force per unit area with vacuum between the plates, -pi^2/(240*L^4)."""
    if not L > 0.0:
        raise ValueError(f"separation must be positive, got {L}")
    return -math.pi**2 / (240.0 * L**4)
