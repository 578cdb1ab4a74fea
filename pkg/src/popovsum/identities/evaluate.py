"""Domain checks, single-point evaluation and sweeps."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import Sequence

import mpmath
from mpmath import mp, mpf

from ..arith import hecke_from_rk
from ..context import EvalContext, smallest_normal
from ..errors import ConvergenceError, DomainError, ParamError, PopovSumError, TableTooShortError
from ..series import SeriesResult, TruncationPolicy, doubling_gap
from .formulas import REGISTRY, check_arity, resolve_values
from .model import EvalReport, IdentityId, IdentityParams, Side
from .riesz import CN_TOL_TIER

DEFAULT_TOL = 1e-20
HECKE_START = 256
HECKE_MAX = 1 << 16


def domain_check(params: IdentityParams) -> bool:
    """True iff the printed validity conditions for ``params.id`` hold.

    Parameters that fail to parse, or an arity mismatch, count as out of
    domain rather than raising.
    """
    d = REGISTRY[params.id]
    try:
        check_arity(params)
        with mp.workprec(64):
            return bool(d.predicate(params, resolve_values(params)))
    except (ParamError, ValueError, TypeError):
        return False


def default_tol(identity: IdentityId) -> float:
    return CN_TOL_TIER if identity == IdentityId.RIESZ_CN else DEFAULT_TOL


def _run_side(side: Side, policy: TruncationPolicy) -> tuple[object, SeriesResult | None]:
    if side.series is None:
        return side.poly, None
    m = abs(side.mult)
    scale = abs(side.poly) / m if m else 0
    res = side.series.run(policy, scale=scale)
    return side.poly + side.mult * res.value, res


def _evaluate_once(params: IdentityParams, policy: TruncationPolicy, ctx: EvalContext):
    d = REGISTRY[params.id]
    with mp.workprec(ctx.work_prec):
        v = resolve_values(params)
        if d.hecke_based:
            v["hecke"] = params.hecke
        lhs_side, rhs_side = d.build(params, v, ctx)
        lhs, lres = _run_side(lhs_side, policy)
        rhs, rres = _run_side(rhs_side, policy)
        lt = abs(lhs_side.mult) * lres.tail_bound if lres else mpf(0)
        rt = abs(rhs_side.mult) * rres.tail_bound if rres else mpf(0)
        diff = abs(lhs - rhs)
        denom = max(abs(lhs), abs(rhs), smallest_normal())
    with mp.workprec(ctx.precision):
        return dict(lhs=+lhs, rhs=+rhs, abs_residual=+diff, rel_residual=+(diff / denom),
                    lhs_terms=lres.n_terms if lres else 0, rhs_terms=rres.n_terms if rres else 0,
                    lhs_tail=+lt, rhs_tail=+rt,
                    lhs_certified=lres.certified if lres else True,
                    rhs_certified=rres.certified if rres else True,
                    tails_rel=(lt + rt) / denom)


def _with_hecke(params: IdentityParams, n_terms: int, ctx: EvalContext) -> IdentityParams:
    return replace(params, hecke=hecke_from_rk(params.k, n_terms, ctx.work_prec), k=None)


def eval_identity(params: IdentityParams, policy: TruncationPolicy | None = None,
                  ctx: EvalContext | None = None, tol: float | None = None) -> EvalReport:
    """Evaluate both sides of ``params.id`` at one point.

    ``tol`` is the relative-residual budget (default 1e-20, or the looser
    tier for the Riesz identity).  Series are truncated at ``tol / 100``
    relative to their side unless ``policy`` asks for less.  If the check
    fails while the tails are inside budget, the point is re-run once at
    doubled precision.  Domain, table-length and convergence problems are
    raised; :func:`sweep` turns them into report lines.
    """
    ctx = ctx or EvalContext()
    tol = default_tol(params.id) if tol is None else tol
    policy = policy or TruncationPolicy(target_tol=tol / 100, max_terms=ctx.max_terms)
    if params.id == IdentityId.RIESZ_CN and policy.target_tol < tol / 100:
        policy = replace(policy, target_tol=tol / 100)
    check_arity(params)
    t0 = time.perf_counter()
    report = EvalReport(identity=params.id.value, params=params.describe(), domain_ok=False,
                        precision_bits=ctx.precision, tol=tol)
    if not domain_check(params):
        raise DomainError(f"{params.id.value} outside its validity domain: {REGISTRY[params.id].domain_text}")
    report.domain_ok = True

    d = REGISTRY[params.id]
    run_params = params
    n_hecke = HECKE_START
    if d.hecke_based and params.hecke is None:
        run_params = _with_hecke(params, n_hecke, ctx)
    run_ctx = ctx
    for attempt in range(2):
        while True:
            try:
                out = _evaluate_once(run_params, policy, run_ctx)
                break
            except TableTooShortError:
                if not (d.hecke_based and params.hecke is None) or n_hecke >= HECKE_MAX:
                    raise
                n_hecke *= 2
                run_params = _with_hecke(params, n_hecke, run_ctx)
        passed = out["rel_residual"] <= tol
        if passed or attempt == 1 or out["tails_rel"] > tol or params.id == IdentityId.RIESZ_CN:
            break
        # tails are within budget yet the sides disagree: rule out cancellation
        run_ctx = ctx.with_precision(2 * ctx.precision)
        if d.hecke_based and params.hecke is None:
            run_params = _with_hecke(params, n_hecke, run_ctx)
    out.pop("tails_rel")
    for key, val in out.items():
        setattr(report, key, val)
    report.precision_bits = run_ctx.precision
    report.passed = bool(passed)
    report.status = "ok" if passed else "residual"
    report.wall_ms = (time.perf_counter() - t0) * 1000
    return report


def tail_audit(params: IdentityParams, ctx: EvalContext | None = None,
               tol: float | None = None) -> list[dict]:
    """Compare each side's tail bound with the explicit block sum of terms N+1 .. 2N.

    Uses the same truncation target as :func:`eval_identity`.  Hecke-class
    identities given only ``k`` get a table long enough for the doubled range.
    """
    ctx = ctx or EvalContext()
    tol = default_tol(params.id) if tol is None else tol
    policy = TruncationPolicy(target_tol=tol / 100, max_terms=ctx.max_terms)
    d = REGISTRY[params.id]
    if not domain_check(params):
        raise DomainError(f"{params.id.value} outside its validity domain")
    if d.hecke_based and params.hecke is None:
        params = _with_hecke(params, 1024, ctx)
    out = []
    with mp.workprec(ctx.work_prec):
        v = resolve_values(params)
        if d.hecke_based:
            v["hecke"] = params.hecke
        for name, side in zip(("lhs", "rhs"), d.build(params, v, ctx)):
            if side.series is None or not hasattr(side.series, "term"):
                continue
            m = abs(side.mult)
            res = side.series.run(policy, scale=abs(side.poly) / m if m else 0)
            gap = doubling_gap(side.series.term, res, side.series.start)
            out.append({"side": name, "n_terms": res.n_terms, "tail_bound": res.tail_bound,
                        "gap": gap, "certified": res.certified, "sound": res.tail_bound >= gap})
    return out


def _failure_report(params: IdentityParams, ctx: EvalContext, tol, status: str,
                    err: Exception, domain_ok: bool) -> EvalReport:
    try:
        desc = params.describe()
    except Exception:
        desc = {"identity": str(params.id)}
    return EvalReport(identity=params.id.value, params=desc, domain_ok=domain_ok,
                      precision_bits=ctx.precision, tol=tol, passed=False, status=status,
                      error=f"{type(err).__name__}: {err}")


def safe_eval(params: IdentityParams, policy: TruncationPolicy | None, ctx: EvalContext,
              tol: float | None = None) -> EvalReport:
    """:func:`eval_identity` with every failure folded into the report."""
    t = default_tol(params.id) if tol is None else tol
    t0 = time.perf_counter()
    try:
        return eval_identity(params, policy, ctx, tol)
    except ParamError as e:
        rep = _failure_report(params, ctx, t, "usage", e, False)
    except DomainError as e:
        rep = _failure_report(params, ctx, t, "domain", e, domain_check(params))
    except (ConvergenceError, TableTooShortError, PopovSumError, ArithmeticError, ValueError) as e:
        rep = _failure_report(params, ctx, t, "numeric", e, True)
    rep.wall_ms = (time.perf_counter() - t0) * 1000
    return rep


def _sweep_worker(args):
    params, policy, ctx, tol = args
    return safe_eval(params, policy, ctx, tol)


def sweep(grid: Sequence[IdentityParams], policy: TruncationPolicy | None = None,
          ctx: EvalContext | None = None, jobs: int = 1, tol: float | None = None) -> list[EvalReport]:
    """One report per grid point, in input order; failures never abort the sweep."""
    ctx = ctx or EvalContext()
    work = [(p, policy, ctx, tol) for p in grid]
    if jobs <= 1 or len(work) <= 1:
        return [_sweep_worker(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_sweep_worker, work))
