"""Command-line front end for reproducible batch runs.

Every run is fully determined by its flags: no hidden state, no wall-clock
or RNG dependence, byte-identical output across repeat invocations and
worker counts. Exit codes: 0 success, 2 usage/domain error, 3 internal
invariant or construction failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .constellation import (
    TABLE1_LATTICES,
    TABLE1_ROWS,
    TABLE2_LATTICE,
    TABLE2_ROWS,
    SumReport,
    carve_lowest_energy,
    inverse_norm_power_sum,
    reports_to_csv,
    table_sweep,
)
from .conjecture import verify_conjecture
from .errors import DomainError, LatticeSecError
from .numfields import LATTICE_NAMES, load_lattice
from .theta import DEFAULT_TOL, eval_z, theta_triple
from .wiretap import ChannelParams, compare_report, db_to_linear
from .zpoly import (
    ZPolynomial,
    known_extremal_table,
    secrecy_gain,
    table_polynomial,
)

__all__ = ["main"]


def _cmd_theta(args: argparse.Namespace) -> int:
    trip = theta_triple(args.y, args.tol)
    z = eval_z(args.y, args.tol)
    print("theta2 = %.17g" % trip.theta2)
    print("theta3 = %.17g" % trip.theta3)
    print("theta4 = %.17g" % trip.theta4)
    print("z = %.17g" % z)
    print("regime = %s" % ("asymptotic" if trip.asymptotic else "series"))
    return 0


def _parse_poly_file(path: str) -> ZPolynomial:
    """Coefficients c0 c1 c2 ... (whitespace or comma separated rationals),
    constant term first."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError("cannot read polynomial file: %s" % exc)
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise DomainError("polynomial file %s is empty" % path)
    try:
        coeffs = tuple(Fraction(tok) for tok in tokens)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError("bad coefficient in %s: %s" % (path, exc))
    return ZPolynomial(coeffs)


def _cmd_secrecy(args: argparse.Namespace) -> int:
    if args.subcommand == "table":
        for dim, poly in known_extremal_table():
            print("dim %d: %s" % (dim, poly))
        return 0

    if args.subcommand == "gain":
        if args.all:
            for dim, poly in known_extremal_table():
                print("%d %s" % (dim, secrecy_gain(poly)))
            return 0
        if args.dim is None:
            raise DomainError("secrecy gain needs --dim or --all")
        print(secrecy_gain(table_polynomial(args.dim)))
        return 0

    # verify
    if args.poly is not None:
        cert = verify_conjecture(_parse_poly_file(args.poly))
        print(cert.to_json())
        return 0
    if args.all:
        docs = []
        for dim, poly in known_extremal_table():
            docs.append(verify_conjecture(poly).to_json_dict(dimension=dim))
        print(json.dumps(docs, indent=2, sort_keys=True))
        return 0
    if args.dim is None:
        raise DomainError("secrecy verify needs --dim, --all, or --poly")
    cert = verify_conjecture(table_polynomial(args.dim))
    print(cert.to_json(dimension=args.dim))
    return 0


def _report_dict(r: SumReport, full_precision: bool) -> dict:
    def f(x: float):
        return x if full_precision else float("%.6g" % x)

    return {
        "lattice": r.lattice_name,
        "m": r.m,
        "p_lim": None if math.isinf(r.p_lim) else r.p_lim,
        "target_size": r.target_size,
        "size": r.size,
        "p_max": f(r.p_max),
        "p_ave": f(r.p_ave),
        "s_value": f(r.s_value),
        "exponent": r.exponent,
    }


def _render_reports(reports: list[SumReport], fmt: str,
                    full_precision: bool) -> str:
    if fmt == "csv":
        return reports_to_csv(reports, full_precision).rstrip("\n")
    if fmt == "json":
        return json.dumps([_report_dict(r, full_precision) for r in reports],
                          indent=2, sort_keys=True)
    # text: the CSV cells, aligned
    rows = [line.split(",")
            for line in reports_to_csv(reports, full_precision).splitlines()]
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return "\n".join(
        "  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip()
        for row in rows)


def _single_report(args: argparse.Namespace) -> SumReport:
    if args.lattice is None or args.m is None:
        raise DomainError("sum needs --lattice and --m (or --reproduce)")
    spec = load_lattice(args.lattice)
    if args.target_size is not None:
        if args.p_lim is not None:
            raise DomainError("--p-lim and --target-size are exclusive")
        return carve_lowest_energy(
            spec.generator, args.m, args.target_size,
            exponent=args.exponent, lattice_name=spec.name)
    p_lim = math.inf if args.p_lim is None else args.p_lim
    return inverse_norm_power_sum(
        spec.generator, args.m, p_lim=p_lim, exponent=args.exponent,
        jobs=args.jobs, lattice_name=spec.name)


def _reproduce(which: str, exponent: int, jobs: int) -> list[SumReport]:
    if which == "table1":
        out: list[SumReport] = []
        for name in TABLE1_LATTICES:
            out.extend(table_sweep(load_lattice(name), TABLE1_ROWS,
                                   exponent=exponent, jobs=jobs))
        return out
    return table_sweep(load_lattice(TABLE2_LATTICE), TABLE2_ROWS,
                       exponent=exponent, jobs=jobs)


def _cmd_sum(args: argparse.Namespace) -> int:
    if args.reproduce is not None:
        if args.lattice is not None or args.m is not None:
            raise DomainError("--reproduce replaces --lattice/--m")
        reports = _reproduce(args.reproduce, args.exponent, args.jobs)
    else:
        reports = [_single_report(args)]
    print(_render_reports(reports, args.format, args.full_precision))
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    if (args.gamma is None) == (args.gamma_db is None):
        raise DomainError("compare needs exactly one of --gamma/--gamma-db")
    gamma = args.gamma if args.gamma is not None else db_to_linear(args.gamma_db)
    reports = []
    for name in args.lattice:
        spec = load_lattice(name)
        if args.target_size is not None:
            reports.append(carve_lowest_energy(
                spec.generator, args.m, args.target_size,
                exponent=args.exponent, lattice_name=spec.name))
        else:
            p_lim = math.inf if args.p_lim is None else args.p_lim
            reports.append(inverse_norm_power_sum(
                spec.generator, args.m, p_lim=p_lim, exponent=args.exponent,
                jobs=args.jobs, lattice_name=spec.name))
    params = ChannelParams(gamma_e=gamma, vol_b=args.vol_b, n=reports[0].n)
    doc = compare_report(reports, params)
    print(doc.to_json() if args.format == "json" else doc.render_text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticesec",
        description="Secrecy certification and eavesdropper-confusion "
                    "metrics for lattice constellations.",
        epilog="LATTICESEC_DATA overrides the lattice data directory.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_theta = sub.add_parser("theta", help="evaluate theta functions and z")
    p_theta.add_argument("--y", type=float, required=True,
                         help="argument of tau = y*i, y > 0")
    p_theta.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p_theta.set_defaults(func=_cmd_theta)

    p_sec = sub.add_parser("secrecy", help="gains and peak certificates")
    p_sec.add_argument("subcommand", choices=("gain", "verify", "table"))
    p_sec.add_argument("--dim", type=int, default=None,
                       help="catalogued dimension (8..80)")
    p_sec.add_argument("--all", action="store_true",
                       help="run every catalogued dimension")
    p_sec.add_argument("--poly", default=None, metavar="FILE",
                       help="verify a polynomial from a coefficient file")
    p_sec.set_defaults(func=_cmd_secrecy)

    p_sum = sub.add_parser("sum", help="inverse-norm power sums over boxes")
    p_sum.add_argument("--lattice", choices=LATTICE_NAMES, default=None)
    p_sum.add_argument("--m", type=int, default=None, help="box bound")
    p_sum.add_argument("--p-lim", type=float, default=None,
                       help="squared-norm cap (default: none)")
    p_sum.add_argument("--target-size", type=int, default=None,
                       help="carve the lowest-energy codebook of this size")
    p_sum.add_argument("--exponent", type=int, default=3)
    p_sum.add_argument("--jobs", type=int, default=1)
    p_sum.add_argument("--format", choices=("csv", "json", "text"),
                       default="csv")
    p_sum.add_argument("--full-precision", action="store_true")
    p_sum.add_argument("--reproduce", choices=("table1", "table2"),
                       default=None, help="emit a bundled reference table")
    p_sum.set_defaults(func=_cmd_sum)

    p_cmp = sub.add_parser(
        "compare", help="rank lattices by eavesdropper confusion")
    p_cmp.add_argument("--lattice", choices=LATTICE_NAMES, action="append",
                       required=True, help="repeatable")
    p_cmp.add_argument("--m", type=int, required=True)
    p_cmp.add_argument("--p-lim", type=float, default=None)
    p_cmp.add_argument("--target-size", type=int, default=None)
    p_cmp.add_argument("--exponent", type=int, default=3)
    p_cmp.add_argument("--jobs", type=int, default=1)
    p_cmp.add_argument("--gamma", type=float, default=None,
                       help="eavesdropper SNR, linear scale")
    p_cmp.add_argument("--gamma-db", type=float, default=None,
                       help="eavesdropper SNR in dB")
    p_cmp.add_argument("--vol-b", type=float, default=1.0,
                       help="legitimate-user cell volume")
    p_cmp.add_argument("--format", choices=("json", "text"), default="text")
    p_cmp.set_defaults(func=_cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DomainError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except LatticeSecError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
