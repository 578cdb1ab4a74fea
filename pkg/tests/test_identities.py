from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpf

from helpers import (cv, ev, half_rho_factor, i_power, mapped, popov_hecke_factor, rel,
                     whittaker_to_bessel_i, whittaker_to_laguerre)
from popovsum.arith import hecke_from_rk, hecke_from_tau
from popovsum.context import EvalContext
from popovsum.errors import DomainError, ParamError, TableTooShortError
from popovsum.identities import (REGISTRY, IdentityId, IdentityParams, default_q, domain_check,
                                 eval_identity, riesz_lhs, safe_eval, sweep)

CTX = EvalContext(128)


def P(identity, **kw):
    return IdentityParams(identity, **kw)


# -- domains and arity ---------------------------------------------------------------

def test_every_tag_registered():
    assert set(REGISTRY) == set(IdentityId)


@pytest.mark.parametrize("params,expected", [
    (P("whittaker-main", k=4, x="2", y="0.5", rho="0.3"), True),
    (P("whittaker-main", k=4, x="1", y="1.5", rho="0"), False),
    (P("whittaker-main", k=4, x="2", y="0.5", rho="1"), False),
    (P("bessel-j-pair", k=3, x="1", y="1,5"), False),
    (P("bessel-j-pair", k=3, x="1", y="3,0.5"), True),
    (P("bessel-i-pair", k=3, x="1", y="3,0.5"), False),
    (P("popov-classical", k=2, x="0.1", z="30,-9"), True),
    (P("popov-classical", k=2, x="-0.1,1", z="1"), False),
    (P("riesz-cn", k=4, x=Fraction(5, 2)), True),
    (P("riesz-cn", k=4, x=2, q=Fraction(3, 2)), False),
    (P("riesz-cn", k=4, x="-1", q=3), False),
    (P("laguerre-k2", x="2", y="0.5", rho="0.49"), True),
    (P("laguerre-k2", x="2", y="0.5", rho="0.5"), False),
    (P("tau-whittaker", x="2", y="0.5", rho="-5.9,3"), True),
    (P("tau-whittaker", x="2", y="0.5", rho="6"), False),
    (P("k4-curious", x="2", y="0.5"), True),
    (P("k4-curious", x="2,0.1", y="0.5"), False),
    (P("half-rho", k=2, x="2", y="0.5"), False),
    (P("whittaker-hecke", k=2, x="2", y="0.5", rho="0.45"), True),
    (P("whittaker-hecke", k=2, x="2", y="0.5", rho="0.5"), False),
    (P("whittaker-hecke", k=2, x="2", y="0.5", rho="0.1,0.1"), False),
    (P("bessel-i-pair", k=2, x="2", y="0"), False),
])
def test_domain_check(params, expected):
    assert domain_check(params) is expected


def test_arity_errors():
    with pytest.raises(ParamError):
        eval_identity(P("theta-k", x="1"), ctx=CTX)
    with pytest.raises(ParamError):
        eval_identity(P("theta-k", k=2, x="1", y="0.3"), ctx=CTX)
    with pytest.raises(ParamError):
        eval_identity(P("bochner-hecke", x="1"), ctx=CTX)
    with mp.workprec(64):
        h = hecke_from_rk(2, 10, 64)
    with pytest.raises(ParamError):
        eval_identity(P("bochner-hecke", k=2, hecke=h, x="1"), ctx=CTX)
    with pytest.raises(ParamError):
        eval_identity(P("whittaker-hecke", k=2, x="2", y="0.5", rho="0", variant="other"), ctx=CTX)
    assert not domain_check(P("theta-k", x="1"))


def test_out_of_domain_raises_before_evaluation():
    with pytest.raises(DomainError):
        eval_identity(P("whittaker-main", k=4, x="1", y="1.5", rho="0"), ctx=CTX)
    rep = safe_eval(P("whittaker-main", k=4, x="1", y="1.5", rho="0"), None, CTX)
    assert not rep.domain_ok and rep.status == "domain" and rep.lhs is None


# -- single-point behaviour ------------------------------------------------------------

def test_theta_k_self_dual_point():
    rep = ev("theta-k", k=3, x="1")
    assert rep.lhs == rep.rhs


def test_whittaker_main_reference_point():
    rep = ev("whittaker-main", tol=1e-20, k=4, x="2", y="0.5", rho="0.3")
    assert rep.passed and rep.rel_residual <= 1e-20
    assert rep.lhs_certified and rep.rhs_certified


def test_whittaker_main_agrees_with_higher_precision():
    lo = ev("whittaker-main", tol=1e-20, k=4, x="2", y="0.5", rho="0.3")
    hi = ev("whittaker-main", tol=1e-30, prec=192, k=4, x="2", y="0.5", rho="0.3")
    assert rel(lo.lhs, hi.lhs) < 1e-20 and rel(lo.rhs, hi.rhs) < 1e-20


def test_residual_invariant():
    for rep in (ev("whittaker-main", k=3, x="1.5", y="-0.4", rho="0.15"),
                ev("bessel-j-pair", k=5, x="2,0.5", y="0.3,0.2"),
                ev("half-rho", k=4, x="2", y="0.5", tol=1e-32)):
        with mp.workprec(128):
            denom = max(abs(rep.lhs), abs(rep.rhs))
            budget = max(10 * (rep.lhs_tail + rep.rhs_tail) / denom, mpf(2) ** (-128 + 24))
            assert rep.rel_residual <= budget


def test_k1_identities_keep_zero_term():
    for ident in ("k1-j", "k1-i"):
        rep = ev(ident, x="1.7", y="0.6")
        assert rep.passed, rep.rel_residual


def test_k4_curious():
    rep = ev("k4-curious", x="1.3", y="0.45")
    assert rep.passed


def test_whittaker_hecke_variants():
    printed = ev("whittaker-hecke", k=2, x="2", y="0.5", rho="0.2", variant="printed")
    corrected = ev("whittaker-hecke", k=2, x="2", y="0.5", rho="0.2", variant="corrected")
    default = ev("whittaker-hecke", k=2, x="2", y="0.5", rho="0.2")
    assert printed.rel_residual > 1e-3 and not printed.passed
    assert corrected.rel_residual <= 1e-15
    assert default.lhs == corrected.lhs and default.rhs == corrected.rhs


def test_precision_ladder_reruns_on_failure():
    rep = ev("whittaker-hecke", k=2, x="2", y="0.5", rho="0.2", variant="printed")
    # a genuine formula error survives the doubled-precision rerun
    assert rep.precision_bits == 256 and rep.status == "residual"


def test_hecke_table_too_short():
    with mp.workprec(148):
        h = hecke_from_rk(2, 5, 148)
    with pytest.raises(TableTooShortError):
        eval_identity(P("bochner-hecke", hecke=h, x="0.3"), ctx=CTX)


def test_hecke_from_tau_runs_whittaker_hecke():
    with mp.workprec(148):
        h = hecke_from_tau(64, 148)
    a = eval_identity(P("whittaker-hecke", hecke=h, x="1.5", y="0.4", rho="2"), ctx=CTX)
    b = ev("tau-whittaker", x="1.5", y="0.4", rho="2", tol=1e-30)
    # lambda_n^{-r/2} = (2 pi n)^{-6} against the printed n^{-6}
    with mp.workprec(148):
        scale = (2 * mpmath.pi) ** 6
    assert a.passed and rel(a.lhs, b.lhs, scale) < 1e-20


def test_hecke_without_envelope_is_uncertified():
    with mp.workprec(148):
        h = hecke_from_rk(2, 200, 148)
        h.envelope = None
    rep = eval_identity(P("bochner-hecke", hecke=h, x="1.1"), ctx=CTX)
    assert rep.passed
    assert not rep.lhs_certified and not rep.rhs_certified


# -- specializations ----------------------------------------------------------------

@pytest.mark.parametrize("k,x,y", [(2, "2", "0.5"), (3, "1.5", "-0.4"), (4, "2,0.5", "0.3,0.2")])
def test_whittaker_rho_zero_is_bessel_i_pair(k, x, y):
    w = ev("whittaker-main", k=k, x=x, y=y, rho="0", tol=1e-32)
    b = ev("bessel-i-pair", k=k, x=x, y=y, tol=1e-32)
    c = whittaker_to_bessel_i(k, y)
    assert rel(b.lhs, w.lhs, c) < 1e-25 and rel(b.rhs, w.rhs, c) < 1e-25


@pytest.mark.parametrize("k", [1, 3, 6])
def test_bessel_j_pair_is_rotated_i_pair(k):
    b = ev("bessel-i-pair", k=k, x="1.8", y="0.7", tol=1e-32)
    j = ev("bessel-j-pair", k=k, x="1.8", y="0,0.7", tol=1e-32)
    assert rel(b.lhs, j.lhs, i_power(k)) < 1e-25


def test_laguerre_is_whittaker_k2():
    w = ev("whittaker-main", k=2, x="2", y="0.5", rho="0.3", tol=1e-32)
    l = ev("laguerre-k2", x="2", y="0.5", rho="0.3", tol=1e-32)
    assert rel(l.lhs, w.lhs, whittaker_to_laguerre("0.5")) < 1e-25


def test_half_rho_is_whittaker_minus_half():
    w = ev("whittaker-main", k=4, x="2", y="0.5", rho="-0.5", tol=1e-32)
    h = ev("half-rho", k=4, x="2", y="0.5", tol=1e-32)
    assert rel(w.lhs, h.lhs, half_rho_factor("2", "0.5")) < 1e-25


def test_theta_jacobi_is_theta_k1():
    a = ev("theta-jacobi", x="1.3,0.2", tol=1e-32)
    b = ev("theta-k", k=1, x="1.3,0.2", tol=1e-32)
    assert rel(a.lhs, b.lhs) < 1e-30 and rel(a.rhs, b.rhs) < 1e-30


@pytest.mark.parametrize("k", [1, 2, 4])
def test_bochner_rk_is_theta(k):
    a = ev("bochner-hecke", k=k, x="0.8", tol=1e-32)
    b = ev("theta-k", k=k, x="0.8", tol=1e-32)
    assert a.lhs == b.lhs and rel(a.rhs, b.rhs) < 1e-35


def test_popov_hecke_matches_classical():
    a = ev("popov-hecke", k=4, x="1.5", z="0.8", tol=1e-32)
    b = ev("popov-classical", k=4, x="1.5", z="0.8", tol=1e-32)
    f = popov_hecke_factor(4, "1.5", "0.8")
    assert rel(a.lhs, b.lhs, f) < 1e-28 and rel(a.rhs, b.rhs, f) < 1e-28


def test_popov_zero_is_theta():
    a = ev("popov-classical", k=2, x="1.5", z="0")
    b = ev("theta-k", k=2, x="1.5")
    assert a.lhs == b.lhs and a.rhs == b.rhs


@pytest.mark.parametrize("x,y,rho", [("2", "0.5", "0.3"), ("1.5", "-0.4", "-0.2"),
                                     ("2,0.5", "0.3,0.2", "0.1,0.3")])
def test_involution_swaps_sides(x, y, rho):
    xm, ym = mapped(x, y)
    with mp.workprec(200):
        xx, yy = mapped(xm, ym)
        assert rel(cv(xx, 200), cv(x, 200)) < 1e-40
    neg = f"{-cv(rho).real},{-cv(rho).imag}"
    orig = ev("whittaker-main", k=4, x=x, y=y, rho=rho)
    image = ev("whittaker-main", k=4, x=xm, y=ym, rho=neg)
    with mp.workprec(148):
        X, Y, R = cv(x), cv(y), cv(rho)
        factor = ((X + Y) / (X - Y)) ** R
        assert rel(orig.rhs, image.lhs, factor) < 1e-18


# -- Riesz sums -------------------------------------------------------------------------

def test_riesz_lhs_examples():
    with mp.workprec(128):
        assert riesz_lhs(2, 0, 2, CTX) == 7
        assert riesz_lhs(2, 0, Fraction(2), CTX) == 7
        # a decimal-string 2 is not exact: the endpoint gets full weight
        assert riesz_lhs(2, 0, "2", CTX) == 9
        assert abs(riesz_lhs(2, 1, "1.5", CTX) - mpf("3.5")) < 1e-35
        assert abs(riesz_lhs(5, 3, "0.5", CTX) - mpf("0.125") / 6) < 1e-35
    with pytest.raises(DomainError):
        riesz_lhs(2, 1, "-1", CTX)


def test_default_q():
    assert default_q(2) == Fraction(5, 2) and default_q(4) == Fraction(7, 2)


def test_riesz_cn_small_case():
    rep = eval_identity(P("riesz-cn", k=2, x=Fraction(3, 2)), ctx=CTX)
    assert rep.passed and rep.rhs_terms <= 10**6
    assert not rep.rhs_certified


# -- sweeps -----------------------------------------------------------------------------

def test_sweep_empty():
    assert sweep([], ctx=CTX) == []


def test_sweep_isolates_failures_and_keeps_order():
    grid = [P("whittaker-main", k=4, x="2", y="0.5", rho="0.3"),
            P("whittaker-main", k=4, x="1", y="1.5", rho="0"),
            P("whittaker-main", k=2, x="1.5", y="-0.4", rho="0.1")]
    reps = sweep(grid, ctx=CTX, tol=1e-18)
    assert [r.domain_ok for r in reps] == [True, False, True]
    assert reps[0].passed and reps[2].passed
    assert reps[2].params["k"] == 2


def test_sweep_parallel_matches_serial():
    grid = [P("theta-k", k=k, x="0.9") for k in (1, 2, 3)]
    a = sweep(grid, ctx=CTX, jobs=2)
    b = sweep(grid, ctx=CTX, jobs=1)
    assert [r.lhs for r in a] == [r.lhs for r in b]


def test_report_serialisation_is_deterministic():
    a = ev("bessel-i-pair", k=3, x="2", y="0.5").to_dict()
    b = ev("bessel-i-pair", k=3, x="2", y="0.5").to_dict()
    a.pop("wall_ms"), b.pop("wall_ms")
    assert a == b
    assert isinstance(a["lhs"][0], str) and isinstance(a["rel_residual"], str)
