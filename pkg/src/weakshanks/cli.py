"""Command-line interface.

Exit codes: 0 success (for ``check`` and ``opa --root``: a root was found),
1 no root found, 2 invalid input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analysis import ScanResult, check_criterion, minimize_quotient, scan_region
from .errors import InvalidParameters, NumericalError
from .hypergeom import DEFAULT_MAX_TERMS, DEFAULT_TOL
from .moments import (
    DEFAULT_ORACLE_DEGREE,
    FunctionParams,
    coeff,
    coeff_oracle,
    taylor_truncate,
)
from .opa import find_bidisk_root, solve_opa
from .quadrature import criterion_integral_sides, series_sides

EXIT_OK, EXIT_NO_ROOT, EXIT_BAD_INPUT, EXIT_NUMERIC = 0, 1, 2, 3

SCAN_COLUMNS = ("alpha", "r", "quotient", "has_root")


@dataclass(frozen=True)
class Config:
    tol: float = DEFAULT_TOL
    max_terms: int = DEFAULT_MAX_TERMS
    oracle_degree: int = DEFAULT_ORACLE_DEGREE
    output_path: Path | None = None

    def __post_init__(self):
        if not self.tol > 0:
            raise InvalidParameters("tol must be > 0")
        if self.max_terms < 100:
            raise InvalidParameters("max_terms must be >= 100")
        if self.oracle_degree < 0:
            raise InvalidParameters("oracle degree must be >= 0")


def _fmt(x: float) -> str:
    return repr(float(x))


def write_scan_csv(scan: ScanResult, stream) -> int:
    """Write a scan as CSV (row-major over alpha then r). Returns the row count."""
    stream.write(",".join(SCAN_COLUMNS) + "\n")
    rows = 0
    for i, al in enumerate(scan.alphas):
        for j, r in enumerate(scan.rs):
            q = scan.quotients[i, j]
            stream.write(
                f"{al:.17g},{r:.17g},{q:.17g},{int(bool(scan.verdicts[i, j]))}\n"
            )
            rows += 1
    return rows


def read_scan_csv(stream) -> ScanResult:
    reader = csv.DictReader(stream)
    if tuple(reader.fieldnames or ()) != SCAN_COLUMNS:
        raise InvalidParameters(f"unexpected CSV header {reader.fieldnames}")
    rows = [(float(d["alpha"]), float(d["r"]), float(d["quotient"]), d["has_root"] == "1")
            for d in reader]
    alphas = list(dict.fromkeys(r[0] for r in rows))
    rs = list(dict.fromkeys(r[1] for r in rows))
    if len(rows) != len(alphas) * len(rs):
        raise InvalidParameters("CSV rows do not form a full grid")
    q = np.array([r[2] for r in rows]).reshape(len(alphas), len(rs))
    v = np.array([r[3] for r in rows]).reshape(len(alphas), len(rs))
    return ScanResult(np.array(alphas), np.array(rs), v, q)


def _params(args) -> FunctionParams:
    return FunctionParams(args.alpha, args.r)


def cmd_coeff(args, cfg: Config, out) -> int:
    p = _params(args)
    key = (args.k1, args.k2)
    value = coeff(p, key, cfg.tol, cfg.max_terms)
    if not args.oracle:
        print(_fmt(value), file=out)
        return EXIT_OK
    oracle = coeff_oracle(taylor_truncate(p, cfg.oracle_degree), key)
    gap = abs(value - oracle) / abs(value) if value else abs(oracle)
    print(f"series {_fmt(value)}", file=out)
    print(f"oracle {_fmt(oracle)}", file=out)
    print(f"relative_gap {gap:.3e}", file=out)
    return EXIT_OK


def cmd_opa(args, cfg: Config, out) -> int:
    sol = solve_opa(_params(args), args.degree, tol=cfg.tol, max_terms=cfg.max_terms)
    print("k1 k2 coeff", file=out)
    for (k1, k2), v in zip(sol.index_set, sol.coeffs):
        print(f"{k1} {k2} {_fmt(v)}", file=out)
    print(f"residual_norm_sq {_fmt(sol.residual_norm_sq)}", file=out)
    if not args.root:
        return EXIT_OK
    w = find_bidisk_root(sol, args.grid_size)
    if w is None:
        print("witness none", file=out)
        return EXIT_NO_ROOT
    print(f"witness z1={w.z1!r} z2={w.z2!r} |p|={abs(w.value):.3e}", file=out)
    return EXIT_OK


def cmd_check(args, cfg: Config, out) -> int:
    rep = check_criterion(_params(args), cfg.tol, cfg.max_terms)
    for name in ("a", "b", "c", "lhs", "rhs", "quotient"):
        print(f"{name} {_fmt(getattr(rep, name))}", file=out)
    print(f"has_root {str(rep.has_root).lower()}", file=out)
    return EXIT_OK if rep.has_root else EXIT_NO_ROOT


def cmd_scan(args, cfg: Config, out) -> int:
    a_lo, a_hi, a_n = args.alpha_range
    r_lo, r_hi, r_n = args.r_range
    try:
        scan = scan_region((a_lo, a_hi, int(a_n)), (r_lo, r_hi, int(r_n)), cfg.tol, cfg.max_terms)
    except ValueError as exc:
        raise InvalidParameters(str(exc)) from exc
    if cfg.output_path is None:
        write_scan_csv(scan, out)
    else:
        with open(cfg.output_path, "w", newline="\n", encoding="ascii") as fh:
            rows = write_scan_csv(scan, fh)
        print(f"wrote {rows} rows to {cfg.output_path}", file=out)
    return EXIT_OK


def cmd_minimize(args, cfg: Config, out) -> int:
    if args.alpha <= 0 or args.r <= 2:
        raise InvalidParameters("start needs alpha > 0 and r > 2")
    res = minimize_quotient(
        args.alpha, args.r, tol=args.simplex_tol, series_tol=cfg.tol, max_terms=cfg.max_terms
    )
    print(f"alpha_star {_fmt(res.alpha_star)}", file=out)
    print(f"r_star {_fmt(res.r_star)}", file=out)
    print(f"quotient_star {_fmt(res.quotient_star)}", file=out)
    print(f"iterations {res.iterations}", file=out)
    print(f"evaluations {res.evaluations}", file=out)
    print(f"converged {str(res.converged).lower()}", file=out)
    return EXIT_OK


def cmd_verify_integral(args, cfg: Config, out) -> int:
    p = _params(args)
    if p.alpha <= 0:
        raise InvalidParameters("verify-integral needs alpha > 0")
    lhs, rhs = criterion_integral_sides(p, tuple(args.orders), cfg.tol)
    s_lhs, s_rhs = series_sides(p, cfg.tol)
    rep = check_criterion(p, cfg.tol, cfg.max_terms)
    agree = (lhs > rhs) == rep.has_root
    print(f"integral_lhs {_fmt(lhs)}", file=out)
    print(f"integral_rhs {_fmt(rhs)}", file=out)
    print(f"series_lhs {_fmt(s_lhs)}", file=out)
    print(f"series_rhs {_fmt(s_rhs)}", file=out)
    print(f"integral_criterion {str(lhs > rhs).lower()}", file=out)
    print(f"series_criterion {str(rep.has_root).lower()}", file=out)
    print(f"verdicts_agree {str(agree).lower()}", file=out)
    return EXIT_OK if agree else EXIT_NUMERIC


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakshanks",
        description="Moments of |f|^2, optimal polynomial approximants and the degree-1 "
        "root criterion for f = (1 - (z1+z2)/r)^(-alpha).",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="series tolerance")
    common.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    common.add_argument("--out", type=Path, default=None, help="output file (scan only)")

    def with_point(p, alpha_default=None, r_default=None):
        p.add_argument("--alpha", type=float, required=alpha_default is None, default=alpha_default)
        p.add_argument("--r", type=float, required=r_default is None, default=r_default)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeff", parents=[common], help="Fourier coefficient c_{k1,k2}")
    with_point(p)
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="also print the convolution value")
    p.add_argument("--oracle-degree", type=int, default=DEFAULT_ORACLE_DEGREE)
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("opa", parents=[common], help="optimal polynomial approximant")
    with_point(p)
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--root", action="store_true", help="search for a zero in the bidisk")
    p.add_argument("--grid-size", type=int, default=16)
    p.set_defaults(func=cmd_opa)

    p = sub.add_parser("check", parents=[common], help="degree-1 root criterion")
    with_point(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scan", parents=[common], help="quotient over an (alpha, r) grid as CSV")
    p.add_argument("--alpha-range", type=float, nargs=3, metavar=("LO", "HI", "STEPS"),
                   default=(2.4, 3.0, 61))
    p.add_argument("--r-range", type=float, nargs=3, metavar=("LO", "HI", "STEPS"),
                   default=(2.4, 2.7, 31))
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("minimize", parents=[common], help="minimize the quotient")
    with_point(p, 2.5, 2.5)
    p.add_argument("--simplex-tol", type=float, default=1e-12, help="simplex diameter tolerance")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("verify-integral", parents=[common],
                       help="triple-integral form of the criterion vs the series form")
    with_point(p)
    p.add_argument("--orders", type=int, nargs=3, default=(64, 64, 64))
    p.set_defaults(func=cmd_verify_integral)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        cfg = Config(args.tol, args.max_terms, getattr(args, "oracle_degree", DEFAULT_ORACLE_DEGREE),
                     args.out)
        return args.func(args, cfg, out)
    except InvalidParameters as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
