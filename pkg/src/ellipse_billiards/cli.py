"""Command-line surface: evaluate the beta-function, tabulate it over rho,
simulate orbits, and recover an ellipse from beta values.

Output is machine-readable only (JSON on stdout, CSV where stated), with
floats printed to 17 significant digits so values round-trip exactly.
Exit codes: 0 ok, 2 domain/usage error, 3 no solution, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from typing import IO, Sequence

from .beta_mather import BetaEvaluation, beta_of_lambda, beta_of_rho
from .conics import Ellipse, caustic_from_lambda
from .errors import DomainError, NoSolutionError, NumericError
from .poncelet import closed_cycle_perimeter, launch_tangent, run_orbit, write_orbit_csv
from .rigidity import recover_from_diameter_pair, recover_from_quarter_and_length
from .rotation_measure import lambda_from_rho, rotation_number, total_measure


def _fmt(value: float) -> str:
    return format(value, ".17g")


def _emit_json(pairs: list[tuple[str, object]], stream: IO[str]) -> None:
    """Write a flat JSON object with a fixed key order and 17-digit floats."""
    parts = []
    for key, value in pairs:
        if value is None:
            text = "null"
        elif isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, int):
            text = str(value)
        elif isinstance(value, float):
            text = _fmt(value)
        else:
            text = str(value)
        parts.append(f'"{key}": {text}')
    stream.write("{" + ", ".join(parts) + "}\n")


def _parse_ratio(text: str) -> float:
    """Parse a rotation number given either as a float or as a fraction m/n."""
    if "/" in text:
        return float(Fraction(text))
    return float(text)


def _table_and_caustic(args) -> tuple[Ellipse, BetaEvaluation]:
    table = Ellipse(args.a, args.b)
    if args.rho is not None:
        return table, beta_of_rho(table, args.rho)
    return table, beta_of_lambda(table, args.lam)


def _cmd_beta(args) -> int:
    table, ev = _table_and_caustic(args)
    if ev.rho == 0.5:
        f = 1.0
        j = 1.0 / table.a
    else:
        caustic = caustic_from_lambda(table, ev.lam)
        f = caustic.f
        j = caustic.J
    _emit_json([
        ("rho", ev.rho),
        ("lambda", ev.lam),
        ("beta", ev.beta),
        ("lazutkin", ev.lazutkin),
        ("caustic_perimeter", ev.caustic_perimeter),
        ("phi", ev.phi),
        ("k", ev.k),
        ("f", f),
        ("J", j),
    ], sys.stdout)
    return 0


def _cmd_table(args) -> int:
    table = Ellipse(args.a, args.b)
    if args.steps < 1:
        raise DomainError("--steps must be >= 1")
    if not 0.0 < args.rho_min <= args.rho_max <= 0.5:
        raise DomainError("need 0 < rho-min <= rho-max <= 0.5")
    if args.steps == 1:
        grid = [args.rho_min]
    else:
        span = args.rho_max - args.rho_min
        grid = [args.rho_min + span * i / (args.steps - 1) for i in range(args.steps)]
    out = sys.stdout
    out.write("rho,lambda,beta,lazutkin,U,caustic_perimeter\n")
    for rho in grid:
        ev = beta_of_rho(table, rho)
        if ev.rho == 0.5:
            total_u = math.inf
        else:
            total_u = total_measure(table, caustic_from_lambda(table, ev.lam)).total_U
        out.write(",".join(_fmt(v) for v in (
            ev.rho, ev.lam, ev.beta, ev.lazutkin, total_u, ev.caustic_perimeter)) + "\n")
    return 0


def _cmd_simulate(args) -> int:
    table = Ellipse(args.a, args.b)
    if args.steps < 1:
        raise DomainError("--steps must be >= 1 (an empty orbit is not an orbit)")
    if args.rho is not None:
        caustic = lambda_from_rho(table, args.rho)
    else:
        caustic = caustic_from_lambda(table, args.lam)
    start = launch_tangent(table, caustic, args.psi0)
    record = run_orbit(table, start, args.steps)
    if args.orbit_csv is not None:
        with open(args.orbit_csv, "w", newline="") as stream:
            write_orbit_csv(record, stream)
    lam_drift = _lambda_drift(table, record)
    pairs: list[tuple[str, object]] = [
        ("a", table.a),
        ("b", table.b),
        ("lambda", caustic.lam),
        ("rho", rotation_number(table, caustic)),
        ("steps", len(record.lines) - 1),
        ("closed_n", record.closed.n if record.closed else None),
        ("closed_m", record.closed.m if record.closed else None),
        ("closure_residual", record.closed.residual if record.closed else None),
        ("empirical_beta",
         closed_cycle_perimeter(record, record.closed.n) / record.closed.n
         if record.closed else None),
        ("perimeter", record.perimeter),
        ("winding", record.winding),
        ("drift_J", record.drift_J),
        ("drift_lambda", lam_drift),
        ("min_delta", record.min_delta),
        ("near_tangent", record.near_tangent),
    ]
    _emit_json(pairs, sys.stdout)
    return 0


def _lambda_drift(table: Ellipse, record) -> float:
    lams = [table.b * table.b - (line.p * line.p
            - (table.a ** 2 - table.b ** 2) * math.cos(line.phi) ** 2)
            for line in record.lines]
    return (max(lams) - min(lams)) / abs(lams[0])


def _cmd_recover(args) -> int:
    if args.mode == "diameter-pair":
        result = recover_from_diameter_pair(args.beta_half, args.rho2, args.beta2)
    else:
        result = recover_from_quarter_and_length(args.beta_quarter, args.circumference)
    _emit_json([
        ("a", result.ellipse.a),
        ("b", result.ellipse.b),
        ("residual", result.residual),
    ], sys.stdout)
    return 0


def _add_table_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--a", type=float, required=True, help="semi-major axis (a > b)")
    parser.add_argument("--b", type=float, required=True, help="semi-minor axis")


def _add_caustic_choice(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--rho", type=_parse_ratio,
                       help="rotation number in (0, 1/2]; accepts m/n or a float")
    group.add_argument("--lambda", dest="lam", type=float,
                       help="confocal caustic parameter in (0, b^2)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellipse-billiards",
        description="Beta-function, rotation numbers, invariant measures and "
                    "Poncelet orbits for billiards in an ellipse.  beta is the "
                    "positive perimeter-per-vertex convention (the classical "
                    "Mather beta-function is its negative).")
    sub = parser.add_subparsers(dest="command", required=True)

    p_beta = sub.add_parser("beta", help="evaluate the beta-function bundle as JSON")
    _add_table_args(p_beta)
    _add_caustic_choice(p_beta)
    p_beta.set_defaults(func=_cmd_beta)

    p_table = sub.add_parser("table", help="CSV table of beta over a rho grid")
    _add_table_args(p_table)
    p_table.add_argument("--rho-min", type=float, required=True)
    p_table.add_argument("--rho-max", type=float, required=True)
    p_table.add_argument("--steps", type=int, required=True)
    p_table.set_defaults(func=_cmd_table)

    p_sim = sub.add_parser("simulate", help="run a tangent orbit; JSON summary on "
                                            "stdout, optional per-reflection CSV")
    _add_table_args(p_sim)
    _add_caustic_choice(p_sim)
    p_sim.add_argument("--steps", type=int, required=True, help="number of reflections")
    p_sim.add_argument("--psi0", type=float, default=0.0,
                       help="outer-normal angle of the launch point (default 0)")
    p_sim.add_argument("--orbit-csv", help="write the orbit dump CSV to this path")
    p_sim.set_defaults(func=_cmd_simulate)

    p_rec = sub.add_parser("recover", help="recover an ellipse from beta values")
    p_rec.add_argument("mode", choices=["diameter-pair", "quarter-length"])
    p_rec.add_argument("--beta-half", type=float, help="beta(1/2) = 2a")
    p_rec.add_argument("--rho2", type=_parse_ratio, help="second rotation number (m/n)")
    p_rec.add_argument("--beta2", type=float, help="beta(rho2)")
    p_rec.add_argument("--beta-quarter", type=float, help="beta(1/4) = sqrt(a^2+b^2)")
    p_rec.add_argument("--circumference", type=float, help="perimeter of the table")
    p_rec.set_defaults(func=_cmd_recover)
    return parser


def _check_recover_flags(parser: argparse.ArgumentParser, args) -> None:
    if args.command != "recover":
        return
    if args.mode == "diameter-pair":
        missing = [n for n, v in (("--beta-half", args.beta_half),
                                  ("--rho2", args.rho2), ("--beta2", args.beta2))
                   if v is None]
    else:
        missing = [n for n, v in (("--beta-quarter", args.beta_quarter),
                                  ("--circumference", args.circumference))
                   if v is None]
    if missing:
        parser.error(f"mode {args.mode} requires {', '.join(missing)}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_recover_flags(parser, args)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NoSolutionError as exc:
        print(f"no solution: {exc}", file=sys.stderr)
        return 3
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
