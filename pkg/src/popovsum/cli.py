"""Command-line front end.

    popovsum check --identity whittaker-main --k 4 --x 2 --y 0.5 --rho 0.3
    popovsum sweep --grid points.json --jobs 2
    popovsum coeffs --kind rk --k 2 --n 5
    popovsum oracle
    popovsum list-identities

Every command writes JSON lines.  Exit status: 0 success, 1 usage error,
2 domain rejection, 3 numeric failure (including a residual over budget).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from mpmath import mp

from .arith import hecke_from_json, hecke_from_rk, hecke_from_tau, rk_table, tau_table
from .context import EvalContext, default_precision
from .errors import ParamError
from .identities import REGISTRY, IdentityId, IdentityParams, safe_eval, sweep
from .identities.model import EvalReport

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_NUMERIC = 0, 1, 2, 3
GRID_KEYS = {"identity", "k", "x", "y", "z", "rho", "mu", "q", "variant"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"expected a rational number, got {text!r}") from e


def _add_eval_flags(p: argparse.ArgumentParser):
    p.add_argument("--prec", type=int, default=None, help="precision in bits (default 128 or $PIL_DEFAULT_PREC)")
    p.add_argument("--tol", type=float, default=None, help="relative residual budget (default 1e-20; 1e-6 for riesz-cn)")
    p.add_argument("--max-terms", type=int, default=20000)
    p.add_argument("--output", type=Path, default=None, help="write JSONL here instead of stdout")
    p.add_argument("--hecke-file", type=Path, default=None, help="JSON HeckeData for Hecke-class identities")
    p.add_argument("--hecke-kind", choices=("rk", "tau"), default=None,
                   help="build the HeckeData from r_k (needs --k) or tau")
    p.add_argument("--n-terms", type=int, default=256, help="table length for --hecke-kind")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="popovsum", description="Check modular summation formulas numerically.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    check = sub.add_parser("check", help="evaluate one identity at one point")
    check.add_argument("--identity", required=True, choices=[i.value for i in IdentityId])
    check.add_argument("--k", type=int)
    for name in ("x", "y", "z"):
        check.add_argument(f"--{name}", help='decimal "re,im" (rational for riesz-cn x)')
    check.add_argument("--rho", "--mu", dest="rho", help='decimal "re,im"')
    check.add_argument("--q", help="Riesz order (rational)")
    check.add_argument("--variant", choices=("printed", "corrected"))
    _add_eval_flags(check)

    sw = sub.add_parser("sweep", help="evaluate a JSON grid of parameter points")
    sw.add_argument("--grid", type=Path, required=True, help="JSON array of parameter objects")
    sw.add_argument("--jobs", type=int, default=1)
    _add_eval_flags(sw)

    co = sub.add_parser("coeffs", help="print a coefficient table")
    co.add_argument("--kind", choices=("rk", "tau"), required=True)
    co.add_argument("--k", type=int)
    co.add_argument("--n", type=int, required=True)
    co.add_argument("--output", type=Path, default=None)

    orc = sub.add_parser("oracle", help="cross-check main-path kernels against the reference oracles")
    orc.add_argument("--output", type=Path, default=None)

    li = sub.add_parser("list-identities", help="print the registry with validity domains")
    li.add_argument("--output", type=Path, default=None)
    return parser


# -- parameter assembly ----------------------------------------------------------

def _load_hecke(args, ctx: EvalContext):
    with mp.workprec(ctx.work_prec):
        if args.hecke_file is not None:
            return hecke_from_json(args.hecke_file.read_text(), ctx.work_prec)
        if args.hecke_kind == "tau":
            return hecke_from_tau(args.n_terms, ctx.work_prec)
        if args.hecke_kind == "rk":
            if args.k is None:
                raise UsageError("--hecke-kind rk needs --k")
            return hecke_from_rk(args.k, args.n_terms, ctx.work_prec)
    return None


def make_params(values: dict, hecke=None) -> IdentityParams:
    """IdentityParams from flag-style values (strings, ints) plus optional HeckeData."""
    values = {k: v for k, v in values.items() if v is not None}
    unknown = set(values) - GRID_KEYS
    if unknown:
        raise UsageError(f"unknown parameter(s) {sorted(unknown)}")
    if "mu" in values:
        if "rho" in values:
            raise UsageError("give rho or mu, not both")
        values["rho"] = values.pop("mu")
    try:
        ident = IdentityId(values.pop("identity"))
    except (KeyError, ValueError) as e:
        raise UsageError(f"missing or unknown identity: {e}") from e
    if ident == IdentityId.RIESZ_CN:
        for key in ("x", "q"):
            if key in values and not isinstance(values[key], int):
                values[key] = _rational(str(values[key]))
    for key in ("x", "y", "z", "rho"):
        if key in values and not isinstance(values[key], (int, Fraction)):
            values[key] = str(values[key])
    if "k" in values:
        if isinstance(values["k"], bool) or not isinstance(values["k"], int):
            raise UsageError("k must be an integer")
    if hecke is not None and REGISTRY[ident].hecke_based:
        values.pop("k", None)
        values["hecke"] = hecke
    return IdentityParams(ident, **values)


def _context(args) -> EvalContext:
    prec = args.prec if args.prec is not None else default_precision()
    return EvalContext(precision=prec, max_terms=args.max_terms)


def _exit_code(reports: Sequence[EvalReport]) -> int:
    statuses = {r.status for r in reports}
    if "usage" in statuses:
        return EXIT_USAGE
    if "domain" in statuses:
        return EXIT_DOMAIN
    if statuses - {"ok"}:
        return EXIT_NUMERIC
    return EXIT_OK


def _write(lines: list[dict], output: Path | None):
    text = "".join(json.dumps(d, sort_keys=False) + "\n" for d in lines)
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text)


# -- commands -----------------------------------------------------------------------

def cmd_check(args) -> int:
    ctx = _context(args)
    hecke = _load_hecke(args, ctx)
    values = {"identity": args.identity, "k": args.k, "x": args.x, "y": args.y, "z": args.z,
              "rho": args.rho, "q": args.q, "variant": args.variant}
    params = make_params(values, hecke)
    report = safe_eval(params, None, ctx, args.tol)
    _write([report.to_dict()], args.output)
    return _exit_code([report])


def cmd_sweep(args) -> int:
    ctx = _context(args)
    try:
        grid = json.loads(args.grid.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read grid file: {e}") from e
    if not isinstance(grid, list):
        raise UsageError("grid file must hold a JSON array")
    hecke = _load_hecke(args, ctx)
    points, bad = [], {}
    for i, item in enumerate(grid):
        try:
            if not isinstance(item, dict):
                raise UsageError("grid entries must be objects")
            points.append(make_params(dict(item), hecke))
        except (UsageError, ParamError, ValueError) as e:
            bad[i] = _usage_line(str(e), item)
            points.append(None)
    good = [p for p in points if p is not None]
    reports = iter(sweep(good, None, ctx, jobs=args.jobs, tol=args.tol))
    out, statuses = [], []
    for i, p in enumerate(points):
        if p is None:
            out.append(bad[i])
            statuses.append(EvalReport("?", {}, False, ctx.precision, status="usage"))
        else:
            r = next(reports)
            out.append(r.to_dict())
            statuses.append(r)
    _write(out, args.output)
    return _exit_code(statuses)


def cmd_coeffs(args) -> int:
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    if args.kind == "rk":
        if args.k is None or args.k < 1:
            raise UsageError("--kind rk needs --k >= 1")
        table = rk_table(args.k, args.n)
    else:
        table = tau_table(args.n)
    line = {"kind": table.kind, "k": table.k, "n": table.N, "method": table.method,
            "values": list(table.values)}
    _write([line], args.output)
    return EXIT_OK


def run_oracle_audit() -> list[dict]:
    """Cross-checks between the main path and the oracles, one dict per audit."""
    from . import oracle
    from .specfun import bessel_i, whittaker_m

    lines = []
    mism = [(k, n) for k in range(1, 7) for n in range(65)
            if rk_table(k, 64)[n] != oracle.rk_enumerate(k, n)]
    lines.append({"audit": "rk_table vs rk_enumerate", "range": "k<=6, n<=64",
                  "mismatches": len(mism), "passed": not mism})
    direct = oracle.eta24_direct(200)
    table = tau_table(200)
    mism = [n for n in range(201) if table[n] != direct[n]]
    lines.append({"audit": "tau_table vs eta24_direct", "range": "n<=200",
                  "mismatches": len(mism), "passed": not mism})
    ctx = EvalContext(precision=64)
    grid = [(0.2, 0.75, "1.5"), (0, 0.5, "0.6"), (-0.3, 1.25, "2,1"), (0.9, 0.25, "3,-1")]
    worst = 0.0
    for rho, nu, z in grid:
        a, b = oracle.whittaker_m_quad(rho, nu, z, ctx=ctx), whittaker_m(rho, nu, z, ctx)
        worst = max(worst, float(abs(a - b) / abs(b)))
    lines.append({"audit": "whittaker_m vs quadrature", "points": len(grid),
                  "max_rel_err": f"{worst:.3e}", "passed": worst <= 1e-8})
    worst = 0.0
    for nu in (0.3, 0.8, 2.5):
        for z in ("2,1", "-3,4", "0.5"):
            a, b = oracle.bessel_i_poisson(nu, z, ctx=ctx), bessel_i(nu, z, ctx)
            worst = max(worst, float(abs(a - b) / abs(b)))
    lines.append({"audit": "bessel_i vs Poisson integral", "points": 9,
                  "max_rel_err": f"{worst:.3e}", "passed": worst <= 1e-10})
    return lines


def cmd_oracle(args) -> int:
    lines = run_oracle_audit()
    _write(lines, args.output)
    return EXIT_OK if all(d["passed"] for d in lines) else EXIT_NUMERIC


def cmd_list(args) -> int:
    lines = []
    for ident, d in REGISTRY.items():
        fields = sorted(d.fields | ({"k | hecke"} if d.hecke_based else set()))
        lines.append({"identity": ident.value, "fields": fields, "optional": sorted(d.optional),
                      "domain": d.domain_text})
    _write(lines, getattr(args, "output", None))
    return EXIT_OK


COMMANDS = {"check": cmd_check, "sweep": cmd_sweep, "coeffs": cmd_coeffs,
            "oracle": cmd_oracle, "list-identities": cmd_list}


def _usage_line(message: str, params=None) -> dict:
    return {"status": "usage", "error": message, "params": params, "passed": False}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except (UsageError, ParamError) as e:
        sys.stdout.write(json.dumps(_usage_line(str(e))) + "\n")
        sys.stderr.write(f"popovsum: {e}\n")
        return EXIT_USAGE
    except ValueError as e:
        sys.stdout.write(json.dumps(_usage_line(str(e))) + "\n")
        sys.stderr.write(f"popovsum: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
