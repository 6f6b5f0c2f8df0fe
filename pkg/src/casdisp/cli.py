"""Command-line front end: single-point computation, sweeps, validation.

Exit codes: 0 success, 1 validation-check failure, 2 argument errors,
3 quadrature failure, 4 file I/O errors.  Warnings go to stderr; the data
stream stays clean.  CSV numbers use a fixed 17-significant-digit form so
identical invocations are byte-identical; JSON uses the shortest
round-trip representation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .closed_form import (
    Scenario,
    SurfaceTermSpec,
    force_analytic,
    total_energy_analytic,
)
from .crosscheck import run_validation_checks
from .dispersion import Cauchy, Constant, Tabulated, load_index_table
from .lifshitz import (
    DEFAULT_QUADRATURE,
    Mode,
    QuadratureError,
    QuadratureSpec,
    force_lifshitz,
    total_energy_lifshitz,
)
from .units import UnitMode, UnitSystem, convert_units

__all__ = ["main", "SweepSpec"]

_CSV_COLUMNS = (
    "e0",
    "delta_e",
    "e_surface",
    "total",
    "force",
    "method",
    "error_estimate",
    "validity_flag",
)


@dataclass(frozen=True)
class SweepSpec:
    """Grid definition for one swept variable ("L" or "n1")."""

    variable: str
    min: float
    max: float
    points: int
    scale: str = "linear"

    def __post_init__(self):
        if self.variable not in ("L", "n1"):
            raise ValueError(f"unknown sweep variable {self.variable!r}")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"unknown scale {self.scale!r}")
        if self.points < 2:
            raise ValueError(f"need at least 2 grid points, got {self.points}")
        if not self.min < self.max:
            raise ValueError(f"need min < max, got [{self.min}, {self.max}]")
        if self.scale == "log" and not self.min > 0.0:
            raise ValueError("log scale needs min > 0")
        if self.variable == "L" and not self.min > 0.0:
            raise ValueError("separations must be positive")
        if self.variable == "n1" and self.min < 0.0:
            raise ValueError("dispersion coefficients must be >= 0")

    def grid(self) -> list[float]:
        if self.scale == "log":
            values = np.geomspace(self.min, self.max, self.points)
        else:
            values = np.linspace(self.min, self.max, self.points)
        return [float(v) for v in values]


def _fmt(x: float) -> str:
    # fixed 17 significant digits; round-trips doubles exactly
    return format(x, ".16e")


def _as_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


# key -> (converter for config values, hard default)
_COMMON_OPTIONS = {
    "L": (float, None),
    "n0": (float, None),
    "n1": (float, None),
    "ns_table": (str, None),
    "cs": (float, None),
    "method": (str, None),
    "mode": (str, None),
    "rel_tol": (float, None),
    "h_rel": (float, 1e-4),
    "si": (_as_bool, False),
    "length_unit": (float, None),
    "format": (str, None),
    "out": (str, None),
}

_SWEEP_ONLY = {
    "variable": (str, None),
    "min": (float, None),
    "max": (float, None),
    "points": (int, None),
    "scale": (str, "linear"),
}


def _read_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path) as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            key, sep, value = text.partition("=")
            if not sep:
                raise ValueError(f"{path}: line {lineno}: expected 'key = value'")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _resolve(args: argparse.Namespace, option_spec: dict) -> dict:
    config = _read_config(args.config) if args.config else {}
    unknown = set(config) - set(option_spec)
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
    resolved = {}
    for key, (convert, default) in option_spec.items():
        value = getattr(args, key)
        if value is None and key in config:
            value = convert(config[key])
        if value is None:
            value = default
        resolved[key] = value
    return resolved


def _add_shared_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--L", type=float, default=None, help="plate separation (natural length units)")
    parser.add_argument("--n0", type=float, default=None, help="constant part of the refractive index")
    parser.add_argument("--n1", type=float, default=None, help="quadratic dispersion coefficient (length^2)")
    parser.add_argument("--ns-table", default=None, help="CSV of (xi, n) index samples on the imaginary-frequency axis")
    parser.add_argument("--cs", type=float, default=None, help="surface-term coefficient c_s (energy = c_s/L^4)")
    parser.add_argument("--method", choices=("analytic", "lifshitz", "both"), default=None, help="evaluation route")
    parser.add_argument("--mode", choices=("split", "full"), default=None, help="quadrature mode (default: split; full for tabulated data)")
    parser.add_argument("--rel-tol", type=float, default=None, help="relative quadrature tolerance (default 1e-10)")
    parser.add_argument("--h-rel", type=float, default=None, help="relative step of the force finite difference (default 1e-4)")
    parser.add_argument("--si", action="store_true", default=None, help="emit SI values (J/m^2, Pa)")
    parser.add_argument("--length-unit", type=float, default=None, help="meters per natural length unit (with --si)")
    parser.add_argument("--format", choices=("json", "csv"), default=None, help="output format")
    parser.add_argument("--out", default=None, help="write output to this file instead of stdout")
    parser.add_argument("--config", default=None, help="flat key = value file mirroring the flags; flags win")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casdisp",
        description=(
            "Casimir energy and force per unit area between ideal metal plates "
            "separated by a dispersive dielectric, by closed form and by "
            "direct quadrature of the imaginary-frequency integral."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="energy breakdown and force at one point")
    _add_shared_options(compute)
    compute.set_defaults(handler=_cmd_compute)

    sweep = sub.add_parser("sweep", help="grid over the separation or the dispersion coefficient")
    _add_shared_options(sweep)
    sweep.add_argument("--variable", choices=("L", "n1"), default=None, help="swept quantity")
    sweep.add_argument("--min", type=float, default=None, help="grid start")
    sweep.add_argument("--max", type=float, default=None, help="grid end")
    sweep.add_argument("--points", type=int, default=None, help="number of grid points (>= 2)")
    sweep.add_argument("--scale", choices=("linear", "log"), default=None, help="grid spacing (default linear)")
    sweep.set_defaults(handler=_cmd_sweep)

    validate = sub.add_parser("validate", help="run the cross-validation battery")
    validate.add_argument(
        "--tol",
        type=float,
        default=1e-7,
        help=(
            "agreement tolerance for the closed-form vs quadrature checks "
            "(default 1e-7); the slope and regulated-sum checks keep their "
            "intrinsic thresholds"
        ),
    )
    validate.set_defaults(handler=_cmd_validate)
    return parser


def _build_model(opts: dict, parser: argparse.ArgumentParser):
    if opts["ns_table"] is not None:
        if opts["n0"] is not None or opts["n1"] is not None:
            parser.error("--ns-table and --n0/--n1 are mutually exclusive")
        return load_index_table(opts["ns_table"])
    if opts["n0"] is None:
        parser.error("one of --n0 or --ns-table is required")
    if opts["n1"] is None:
        return Constant(opts["n0"])
    return Cauchy(opts["n0"], opts["n1"])


def _quad_spec(opts: dict) -> QuadratureSpec:
    if opts["rel_tol"] is None:
        return DEFAULT_QUADRATURE
    return QuadratureSpec(rel_tol=opts["rel_tol"])


def _unit_system(opts: dict) -> UnitSystem:
    if not opts["si"]:
        return UnitSystem()
    return UnitSystem(UnitMode.SI, opts["length_unit"])


def _mode_for(opts: dict, model) -> Mode:
    if opts["mode"] == "full":
        return Mode.FULL_KAPPA1
    if opts["mode"] == "split":
        return Mode.FIRST_ORDER_SPLIT
    return Mode.FULL_KAPPA1 if isinstance(model, Tabulated) else Mode.FIRST_ORDER_SPLIT


def _method_list(method: str) -> list[str]:
    return ["analytic", "lifshitz"] if method == "both" else [method]


def _evaluate(scenario: Scenario, method: str, quad, mode, h_rel):
    if method == "analytic":
        breakdown = total_energy_analytic(scenario)
        return breakdown, force_analytic(scenario), 0.0
    breakdown = total_energy_lifshitz(scenario, quad, mode)
    force = force_lifshitz(scenario, quad, h_rel, mode)
    return breakdown, force.value, force.error


def _warn_validity(scenario: Scenario) -> None:
    message = "warning: result lies outside the dispersion model's trust region"
    model = scenario.model
    if isinstance(model, Cauchy) and model.n1 > 0.0:
        bound = 2.0 * math.pi * math.sqrt(model.n1)
        message += f" (separation {scenario.L:g} vs bound {bound:g})"
    print(message, file=sys.stderr)


def _result_record(breakdown, force, force_error, units: UnitSystem) -> dict:
    def energy(x):
        return convert_units(x, units, "energy_per_area")

    def pressure(x):
        return convert_units(x, units, "force_per_area")

    return {
        "method": breakdown.method.value,
        "e0": energy(breakdown.e0),
        "delta_e": energy(breakdown.delta_e),
        "e_surface": energy(breakdown.e_surface),
        "total": energy(breakdown.total),
        "force": pressure(force),
        "error_estimate": energy(breakdown.error_estimate),
        "force_error_estimate": pressure(force_error),
        "beyond_validity": breakdown.beyond_validity,
    }


def _model_echo(model) -> dict:
    if isinstance(model, Constant):
        return {"type": "constant", "n0": model.n0}
    if isinstance(model, Cauchy):
        return {"type": "cauchy", "n0": model.n0, "n1": model.n1}
    return {
        "type": "tabulated",
        "samples": len(model.xi),
        "xi_min": model.xi[0],
        "xi_max": model.xi[-1],
    }


def _units_echo(units: UnitSystem) -> dict:
    return {
        "mode": units.mode.value,
        "length_unit_in_meters": units.length_unit_in_meters,
    }


def _csv_text(first_column: str, rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([first_column, *_CSV_COLUMNS])
    writer.writerows(rows)
    return buffer.getvalue()


def _csv_row(variable_value: float, record: dict) -> list[str]:
    return [
        _fmt(variable_value),
        _fmt(record["e0"]),
        _fmt(record["delta_e"]),
        _fmt(record["e_surface"]),
        _fmt(record["total"]),
        _fmt(record["force"]),
        record["method"],
        _fmt(record["error_estimate"]),
        "1" if record["beyond_validity"] else "0",
    ]


def _emit(text: str, out_path) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w") as handle:
            handle.write(text)


def _cmd_compute(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    opts = _resolve(args, _COMMON_OPTIONS)
    model = _build_model(opts, parser)
    if opts["L"] is None:
        parser.error("--L is required")
    if opts["method"] is None:
        parser.error("--method is required")
    if opts["format"] is None:
        parser.error("--format is required")

    surface = SurfaceTermSpec(opts["cs"]) if opts["cs"] is not None else None
    scenario = Scenario(opts["L"], model, surface)
    quad = _quad_spec(opts)
    units = _unit_system(opts)
    mode = _mode_for(opts, model)

    records = []
    for method in _method_list(opts["method"]):
        breakdown, force, force_error = _evaluate(scenario, method, quad, mode, opts["h_rel"])
        if breakdown.beyond_validity:
            _warn_validity(scenario)
        records.append(_result_record(breakdown, force, force_error, units))

    if opts["format"] == "json":
        payload = {
            "scenario": {
                "L": scenario.L,
                "model": _model_echo(model),
                "c_s": surface.c_s if surface else None,
            },
            "units": _units_echo(units),
            "results": records,
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = _csv_text("L", [_csv_row(scenario.L, r) for r in records])
    _emit(text, opts["out"])
    return 0


def _cmd_sweep(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    opts = _resolve(args, {**_COMMON_OPTIONS, **_SWEEP_ONLY})
    for key in ("variable", "min", "max", "points"):
        if opts[key] is None:
            parser.error(f"--{key} is required")
    if opts["method"] is None:
        parser.error("--method is required")
    if opts["format"] is None:
        parser.error("--format is required")
    try:
        spec = SweepSpec(opts["variable"], opts["min"], opts["max"], opts["points"], opts["scale"])
    except ValueError as exc:
        parser.error(str(exc))

    surface = SurfaceTermSpec(opts["cs"]) if opts["cs"] is not None else None
    quad = _quad_spec(opts)
    units = _unit_system(opts)

    if spec.variable == "n1":
        if opts["ns_table"] is not None:
            parser.error("cannot sweep n1 against a tabulated model")
        if opts["n0"] is None:
            parser.error("--n0 is required when sweeping n1")
        if opts["L"] is None:
            parser.error("--L is required when sweeping n1")

        def scenario_at(value: float) -> Scenario:
            return Scenario(opts["L"], Cauchy(opts["n0"], value), surface)

        fixed_model = Cauchy(opts["n0"], 0.0)
    else:
        fixed_model = _build_model(opts, parser)

        def scenario_at(value: float) -> Scenario:
            return Scenario(value, fixed_model, surface)

    mode = _mode_for(opts, fixed_model)
    methods = _method_list(opts["method"])

    rows = []
    records = []
    flagged = 0
    for value in spec.grid():
        scenario = scenario_at(value)
        for method in methods:
            breakdown, force, force_error = _evaluate(scenario, method, quad, mode, opts["h_rel"])
            record = _result_record(breakdown, force, force_error, units)
            if record["beyond_validity"]:
                flagged += 1
            rows.append(_csv_row(value, record))
            records.append({spec.variable: value, **record})
    if flagged:
        print(
            f"warning: {flagged} of {len(rows)} rows lie outside the dispersion "
            "model's trust region",
            file=sys.stderr,
        )

    if opts["format"] == "json":
        payload = {
            "sweep": {
                "variable": spec.variable,
                "min": spec.min,
                "max": spec.max,
                "points": spec.points,
                "scale": spec.scale,
            },
            "scenario": {
                "L": opts["L"],
                "model": _model_echo(fixed_model),
                "c_s": surface.c_s if surface else None,
            },
            "units": _units_echo(units),
            "rows": records,
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = _csv_text(spec.variable, rows)
    _emit(text, opts["out"])
    return 0


def _cmd_validate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if not args.tol >= 0.0:
        parser.error("--tol must be non-negative")
    checks = run_validation_checks(tol=args.tol)
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"{status}  {check.name}  ({check.detail})")
    failed = sum(1 for check in checks if not check.passed)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 0 if failed == 0 else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args, parser)
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
