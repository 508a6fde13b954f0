"""Command-line driver: verification experiments with CSV/JSON reports.

Commands
--------
spectrum        energy table under both conventions plus the
                non-relativistic limit
orthonormality  Gram-matrix deviation from the identity (1D or radial)
closure         projection/reconstruction sup-errors over a truncation
                ladder for a catalogued test function
degeneracy      shell enumeration against the (N+1)(N+2)/2 formula
greens          truncated Green's function value plus the
                coefficient-identity residual

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 numeric contract violation (pole proximity, quadrature misuse).
Output is deterministic: identical invocations produce identical bytes
(no timestamps).  CSV is RFC-4180-style with a mandatory header row and
17-significant-digit floats; JSON is a single object with
"schema_version": "1".
"""

from __future__ import annotations

import argparse
import enum
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .errors import IntegrandError, PoleProximityError, QuadratureError
from .greens import (
    GreensQuery,
    coefficient_deviation_1d,
    coefficient_deviation_radial,
    greens_1d,
    greens_3d_partial_wave,
)
from .oscillator1d import (
    Branch,
    OscillatorParams,
    SpectrumConvention,
    eigenfunction_1d,
    energy_1d,
    gram_matrix_1d,
    nonrel_energy,
    project_1d,
    reconstruct_1d,
)
from .oscillator3d import (
    degeneracy,
    energy_3d,
    project_radial,
    radial_eigenfunction,
    radial_gram,
    reconstruct_radial,
    shell_modes,
)
from .quadrature import gauss_hermite, gauss_laguerre

__all__ = ["RunConfig", "KernelReport", "main", "build_parser", "TEST_FUNCTIONS_1D", "TEST_FUNCTIONS_RADIAL"]

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

GRAM_GATE = 1e-9
MONOTONE_SLACK = 1e-12
COEFF_GATE = 1e-9


class OutputFormat(enum.Enum):
    CSV = "csv"
    JSON = "json"


@dataclass(frozen=True)
class RunConfig:
    mass: float
    frequency: float
    convention: SpectrumConvention
    output_format: OutputFormat
    output_path: str | None  # None = stdout

    @property
    def params(self) -> OscillatorParams:
        return OscillatorParams(self.mass, self.frequency, self.convention)


@dataclass(frozen=True)
class KernelReport:
    """Reconstruction errors of a closure experiment, one per truncation."""

    dimension: str  # "1d" or "radial-ell<k>"
    truncations: list[int]
    test_function_id: str
    errors: list[float]
    grid_spec: str

    def __post_init__(self):
        if len(self.errors) != len(self.truncations):
            raise ValueError("errors must parallel truncations")
        if any(e < 0 for e in self.errors):
            raise ValueError("errors must be non-negative")


# ---------------------------------------------------------------------------
# test-function catalogue (fixed; no user expressions)
# ---------------------------------------------------------------------------

# 1D entries map id -> (description, factory(params) -> f(x)).
TEST_FUNCTIONS_1D = {
    "gaussian": ("exp(-x^2)", lambda p: lambda x: math.exp(-x * x)),
    "shifted-gaussian": ("exp(-(x-1)^2)", lambda p: lambda x: math.exp(-((x - 1.0) ** 2))),
    "poly-gaussian": (
        "(1 + x + x^3) exp(-lambda^2 x^2/2), in the span of psi_0..psi_3",
        lambda p: lambda x: (1.0 + x + x**3) * math.exp(-0.5 * p.lam**2 * x * x),
    ),
    "mode-3": ("psi_3 itself", lambda p: lambda x: float(eigenfunction_1d(p, 3, x))),
}

# radial entries get the ell sector as well.
TEST_FUNCTIONS_RADIAL = {
    "radial-gaussian": (
        "r^(ell+1) exp(-r^2)",
        lambda p, ell: lambda r: r ** (ell + 1) * math.exp(-r * r),
    ),
    "radial-poly-gaussian": (
        "r^(ell+1) (1 + r^2) exp(-lambda^2 r^2/2), span of R_0..R_1",
        lambda p, ell: lambda r: r ** (ell + 1) * (1.0 + r * r) * math.exp(-0.5 * p.lam**2 * r * r),
    ),
    "rmode-2": ("R_{2,ell} itself", lambda p, ell: lambda r: float(radial_eigenfunction(p, 2, ell, r))),
}


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _csv_escape(cell: str) -> str:
    if any(ch in cell for ch in ',"\n'):
        return '"' + cell.replace('"', '""') + '"'
    return cell


def _emit_csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_csv_escape(_fmt(cell)) for cell in row))
    return "\n".join(lines) + "\n"


def _emit_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _write_output(config: RunConfig, text: str):
    if config.output_path is None:
        sys.stdout.write(text)
        return
    try:
        with open(config.output_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        raise _UsageError(f"cannot write output to {config.output_path!r}: {exc}") from exc


class _UsageError(Exception):
    pass


def _config_payload(config: RunConfig) -> dict:
    return {
        "mass": config.mass,
        "frequency": config.frequency,
        "convention": config.convention.value,
    }


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_spectrum(config: RunConfig, dimension: str, n_max: int) -> int:
    """Energy table: both conventions, both branches, non-relativistic
    limit and the as-printed-minus-limit column."""
    base = {
        SpectrumConvention.ODE_DERIVED: OscillatorParams(
            config.mass, config.frequency, SpectrumConvention.ODE_DERIVED
        ),
        SpectrumConvention.AS_PRINTED: OscillatorParams(
            config.mass, config.frequency, SpectrumConvention.AS_PRINTED
        ),
    }
    rows = []
    for n in range(n_max + 1):
        for branch in (Branch.POSITIVE, Branch.NEGATIVE):
            if dimension == "1d":
                e_ode = energy_1d(base[SpectrumConvention.ODE_DERIVED], n, branch)
                e_pr = energy_1d(base[SpectrumConvention.AS_PRINTED], n, branch)
                e_nr = branch.sign * nonrel_energy(base[SpectrumConvention.ODE_DERIVED], n)
            else:
                e_ode = energy_3d(base[SpectrumConvention.ODE_DERIVED], n, branch)
                e_pr = energy_3d(base[SpectrumConvention.AS_PRINTED], n, branch)
                e_nr = branch.sign * (config.mass + config.frequency * (n + 1.5))
            rows.append((n, branch.value, e_ode, e_pr, e_nr, e_pr - e_nr))
    header = ["n", "branch", "energy_ode_derived", "energy_as_printed", "energy_nonrel", "printed_minus_nonrel"]
    if config.output_format is OutputFormat.CSV:
        _write_output(config, _emit_csv(header, rows))
    else:
        payload = {
            "schema_version": "1",
            "command": "spectrum",
            "config": _config_payload(config),
            "dimension": dimension,
            "rows": [dict(zip(header, row)) for row in rows],
        }
        _write_output(config, _emit_json(payload))
    return EXIT_OK


def cmd_orthonormality(
    config: RunConfig, dimension: str, n_max: int, ell: int | None, quad_count: int | None
) -> int:
    """Gram-matrix deviation report; fails (exit 1) above the 1e-9 gate."""
    params = config.params
    count = quad_count if quad_count is not None else n_max + 1
    if dimension == "1d":
        rule = gauss_hermite(count)
        gram = gram_matrix_1d(params, n_max, rule)
    else:
        rule = gauss_laguerre(count, ell + 0.5)
        gram = radial_gram(params, ell, n_max, rule)
    eye = np.eye(n_max + 1)
    diag_dev = float(np.max(np.abs(np.diag(gram) - 1.0)))
    off = gram - np.diag(np.diag(gram))
    off_dev = float(np.max(np.abs(off)))
    passed = max(diag_dev, off_dev) <= GRAM_GATE
    header = ["dimension", "ell", "n_max", "quad_count", "max_diag_deviation", "max_offdiag_deviation", "passed"]
    row = (dimension, "" if ell is None else ell, n_max, rule.count, diag_dev, off_dev, passed)
    if config.output_format is OutputFormat.CSV:
        _write_output(config, _emit_csv(header, [row]))
    else:
        payload = {
            "schema_version": "1",
            "command": "orthonormality",
            "config": _config_payload(config),
            "dimension": dimension,
            "ell": ell,
            "n_max": n_max,
            "quad_count": rule.count,
            "max_diag_deviation": diag_dev,
            "max_offdiag_deviation": off_dev,
            "passed": passed,
        }
        _write_output(config, _emit_json(payload))
    return EXIT_OK if passed else EXIT_VERIFICATION


def _closure_report(config, dimension, ell, truncations, fn_id, quad_count) -> KernelReport:
    params = config.params
    lam = params.lam
    n_top = max(truncations)
    count = quad_count if quad_count is not None else n_top + 64
    if dimension == "1d":
        try:
            f = TEST_FUNCTIONS_1D[fn_id][1](params)
        except KeyError:
            raise _UsageError(
                f"unknown 1d test function {fn_id!r}; known ids: {sorted(TEST_FUNCTIONS_1D)}"
            ) from None
        rule = gauss_hermite(count)
        grid = np.linspace(-6.0 / lam, 6.0 / lam, 101)
        grid_spec = f"uniform[{-6.0 / lam:.6g},{6.0 / lam:.6g}]n=101"
        reference = np.array([f(x) for x in grid])
        errors = []
        for n in truncations:
            proj = project_1d(params, n, f, rule)
            rec = reconstruct_1d(proj, grid)
            errors.append(float(np.max(np.abs(rec - reference))))
        label = "1d"
    else:
        try:
            f = TEST_FUNCTIONS_RADIAL[fn_id][1](params, ell)
        except KeyError:
            raise _UsageError(
                f"unknown radial test function {fn_id!r}; known ids: {sorted(TEST_FUNCTIONS_RADIAL)}"
            ) from None
        rule = gauss_laguerre(count, ell + 0.5)
        grid = np.linspace(0.05 / lam, 6.0 / lam, 101)
        grid_spec = f"uniform[{0.05 / lam:.6g},{6.0 / lam:.6g}]n=101"
        reference = np.array([f(r) for r in grid])
        errors = []
        for n in truncations:
            proj = project_radial(params, ell, n, f, rule)
            rec = reconstruct_radial(proj, grid)
            errors.append(float(np.max(np.abs(rec - reference))))
        label = f"radial-ell{ell}"
    return KernelReport(
        dimension=label,
        truncations=list(truncations),
        test_function_id=fn_id,
        errors=errors,
        grid_spec=grid_spec,
    )


def cmd_closure(
    config: RunConfig,
    dimension: str,
    ell: int | None,
    truncations: list[int],
    fn_id: str,
    quad_count: int | None,
) -> int:
    """Reconstruction sup-errors per truncation; fails (exit 1) if the
    error column is not non-increasing (within slack)."""
    report = _closure_report(config, dimension, ell, truncations, fn_id, quad_count)
    passed = all(
        later <= earlier + MONOTONE_SLACK
        for earlier, later in zip(report.errors, report.errors[1:])
    )
    if config.output_format is OutputFormat.CSV:
        header = ["dimension", "test_function", "truncation", "sup_error"]
        rows = [
            (report.dimension, report.test_function_id, n, e)
            for n, e in zip(report.truncations, report.errors)
        ]
        _write_output(config, _emit_csv(header, rows))
    else:
        payload = {
            "schema_version": "1",
            "command": "closure",
            "config": _config_payload(config),
            "dimension": report.dimension,
            "test_function": report.test_function_id,
            "grid_spec": report.grid_spec,
            "truncations": report.truncations,
            "errors": report.errors,
            "passed": passed,
        }
        _write_output(config, _emit_json(payload))
    return EXIT_OK if passed else EXIT_VERIFICATION


def cmd_degeneracy(config: RunConfig, n_max: int) -> int:
    """Shell table: modes, brute-force (2 ell + 1) sum, closed formula."""
    rows = []
    all_match = True
    for N in range(n_max + 1):
        modes = shell_modes(N)
        brute = sum(2 * ell + 1 for _, ell in modes)
        formula = degeneracy(N)
        match = brute == formula
        all_match = all_match and match
        mode_str = " ".join(f"({n_r},{ell})" for n_r, ell in modes)
        rows.append((N, mode_str, brute, formula, match))
    header = ["N", "shell_modes", "sum_2ellp1", "formula", "match"]
    if config.output_format is OutputFormat.CSV:
        _write_output(config, _emit_csv(header, rows))
    else:
        payload = {
            "schema_version": "1",
            "command": "degeneracy",
            "config": _config_payload(config),
            "rows": [
                {
                    "N": N,
                    "shell_modes": mode_str,
                    "sum_2ellp1": brute,
                    "formula": formula,
                    "match": match,
                }
                for N, mode_str, brute, formula, match in rows
            ],
            "passed": all_match,
        }
        _write_output(config, _emit_json(payload))
    return EXIT_OK if all_match else EXIT_VERIFICATION


def cmd_greens(
    config: RunConfig,
    dimension: str,
    ell: int | None,
    energy_sq: float,
    x1: float,
    x2: float,
    n_max: int,
    pole_guard: float,
    quad_count: int | None,
) -> int:
    """Green's function value plus the coefficient-identity residual;
    fails (exit 1) above the 1e-9 gate, exit 3 on pole proximity."""
    params = config.params
    query = GreensQuery(probe_energy_sq=energy_sq, truncation=n_max, pole_guard=pole_guard)
    count = quad_count if quad_count is not None else n_max + 16
    k_max = min(10, n_max)
    if dimension == "1d":
        value = greens_1d(params, query, x1, x2)
        deviation = coefficient_deviation_1d(params, query, x2, gauss_hermite(count), k_max)
    else:
        value = greens_3d_partial_wave(params, ell, query, x1, x2)
        deviation = coefficient_deviation_radial(
            params, ell, query, x2, gauss_laguerre(count, ell + 0.5), k_max
        )
    passed = deviation <= COEFF_GATE
    header = ["dimension", "ell", "energy_sq", "x1", "x2", "truncation", "value", "max_coefficient_deviation", "passed"]
    row = (dimension, "" if ell is None else ell, energy_sq, x1, x2, n_max, value, deviation, passed)
    if config.output_format is OutputFormat.CSV:
        _write_output(config, _emit_csv(header, [row]))
    else:
        payload = {
            "schema_version": "1",
            "command": "greens",
            "config": _config_payload(config),
            "dimension": dimension,
            "ell": ell,
            "energy_sq": energy_sq,
            "x1": x1,
            "x2": x2,
            "truncation": n_max,
            "value": value,
            "max_coefficient_deviation": deviation,
            "passed": passed,
        }
        _write_output(config, _emit_json(payload))
    return EXIT_OK if passed else EXIT_VERIFICATION


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgo",
        description="Klein-Gordon oscillator eigenbasis verification experiments",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mass", type=float, default=1.0, help="particle mass (natural units)")
    common.add_argument("--frequency", type=float, default=1.0, help="oscillator frequency")
    common.add_argument(
        "--convention",
        choices=[c.value for c in SpectrumConvention],
        default=SpectrumConvention.ODE_DERIVED.value,
        help="spectrum convention (default: ode-derived)",
    )
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default="csv")
    common.add_argument("--out", default=None, help="output path (default: stdout)")

    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common], help="energy table")
    sp.add_argument("--dimension", choices=["1d", "3d"], default="1d")
    sp.add_argument("--n-max", type=int, default=10)

    orth = sub.add_parser("orthonormality", parents=[common], help="Gram-matrix check")
    orth.add_argument("--dimension", choices=["1d", "radial"], default="1d")
    orth.add_argument("--n-max", type=int, default=50)
    orth.add_argument("--ell", type=int, default=None)
    orth.add_argument("--quad-count", type=int, default=None, help="override the automatic rule size")

    clo = sub.add_parser("closure", parents=[common], help="weak-closure reconstruction ladder")
    clo.add_argument("--dimension", choices=["1d", "radial"], default="1d")
    clo.add_argument("--ell", type=int, default=None)
    clo.add_argument("--truncations", default="10,20,40", help="comma-separated truncation orders")
    clo.add_argument("--test-function", default="gaussian", help="catalogue id (see README)")
    clo.add_argument("--quad-count", type=int, default=None)

    deg = sub.add_parser("degeneracy", parents=[common], help="shell degeneracy table")
    deg.add_argument("--n-max", type=int, default=10)

    gre = sub.add_parser("greens", parents=[common], help="spectral Green's function")
    gre.add_argument("--dimension", choices=["1d", "radial"], default="1d")
    gre.add_argument("--ell", type=int, default=None)
    gre.add_argument("--energy-sq", type=float, required=True, help="probe energy squared")
    gre.add_argument("--x1", type=float, required=True, help="first position (radius for radial)")
    gre.add_argument("--x2", type=float, required=True, help="second position (radius for radial)")
    gre.add_argument("--n-max", type=int, default=25)
    gre.add_argument("--pole-guard", type=float, default=1e-6)
    gre.add_argument("--quad-count", type=int, default=None)
    return parser


def _run(args) -> int:
    config = RunConfig(
        mass=args.mass,
        frequency=args.frequency,
        convention=SpectrumConvention(args.convention),
        output_format=OutputFormat(args.format),
        output_path=args.out,
    )
    if config.mass <= 0 or config.frequency <= 0:
        raise _UsageError("mass and frequency must be positive")

    needs_ell = getattr(args, "dimension", None) == "radial"
    ell = getattr(args, "ell", None)
    if needs_ell and ell is None:
        raise _UsageError("--ell is required with --dimension radial")
    if ell is not None and ell < 0:
        raise _UsageError("--ell must be >= 0")

    if args.command == "spectrum":
        if args.n_max < 0:
            raise _UsageError("--n-max must be >= 0")
        return cmd_spectrum(config, args.dimension, args.n_max)
    if args.command == "orthonormality":
        return cmd_orthonormality(config, args.dimension, args.n_max, ell, args.quad_count)
    if args.command == "closure":
        try:
            truncations = [int(tok) for tok in args.truncations.split(",") if tok.strip()]
        except ValueError:
            raise _UsageError(f"bad --truncations value {args.truncations!r}") from None
        if not truncations or any(t < 0 for t in truncations):
            raise _UsageError("truncations must be non-negative integers")
        return cmd_closure(config, args.dimension, ell, truncations, args.test_function, args.quad_count)
    if args.command == "degeneracy":
        if args.n_max < 0:
            raise _UsageError("--n-max must be >= 0")
        return cmd_degeneracy(config, args.n_max)
    if args.command == "greens":
        return cmd_greens(
            config,
            args.dimension,
            ell,
            args.energy_sq,
            args.x1,
            args.x2,
            args.n_max,
            args.pole_guard,
            args.quad_count,
        )
    raise _UsageError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except _UsageError as exc:
        print(f"kgo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PoleProximityError as exc:
        print(f"kgo: pole proximity: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (QuadratureError, IntegrandError) as exc:
        print(f"kgo: numeric contract violation: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"kgo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
