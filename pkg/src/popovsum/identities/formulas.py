"""Both sides of every registered summation formula, as evaluation plans.

Each builder returns ``(lhs, rhs)`` :class:`Side` objects: a polynomial
(closed-form) term plus a multiplier times one infinite series.  All
quantities are computed at the working precision of the inner context; all
powers are principal-branch.  Majorant constants come from

* |r_k(n)| <= (3 sqrt n)^k,
* |(w/2)^{-nu} I_nu(w)| <= e^{|Re w|}/Gamma(nu+1) (J: e^{|Im w|}), real nu >= -1/2,
* |M_{rho,nu}(w)| <= C |w|^{nu+1/2} e^{|Re w|/2}  (Kummer integral).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import mpmath
from mpmath import mpc, mpf

from ..arith import HeckeData, hecke_from_rk, rk_values, tau_table
from ..context import EvalContext, to_cvalue, to_real
from ..errors import DomainError, ParamError
from ..series import Majorant
from ..specfun import (bessel_i, bessel_j, bessel_scaled_bound, cpow, gamma, laguerre,
                       whittaker_m, whittaker_m_bound)
from .model import IdentityId, IdentityParams, SeriesSpec, Side
from .riesz import RieszBesselSeries, default_q, riesz_lhs

HALF = mpf(1) / 2


def _r(k: int) -> Callable[[int], int]:
    def coeff(n: int) -> int:
        return rk_values(k, n)[n]
    return coeff


@lru_cache(maxsize=8)
def _tau(N: int):
    return tau_table(N)


def _tau_coeff(n: int) -> int:
    size = 256
    while size < n:
        size *= 2
    return _tau(size)[n]


def _f(v) -> float:
    # majorant constants are bounds; 1e-12 relative slack covers their rounding
    return float(v) * (1 + 1e-12)


def _beta(x, y, e, ctx):
    return cpow((x - y) / (x + y), e, ctx)


def _whittaker_margins(x, y):
    """Decay margins of the two sides of an M-type formula under Re(x) > |Re(y)|."""
    s = x * x - y * y
    return x.real - abs(y.real), min((1 / (x + y)).real, (1 / (x - y)).real), s


def _assert_cut_free(x, y):
    # Re(x) > |Re(y)| puts x +- y in the right half plane, so the ratio
    # (x-y)/(x+y) and x^2-y^2 avoid the negative real axis
    if not ((x - y).real > 0 and (x + y).real > 0):
        raise DomainError("x - y and x + y must lie in the right half plane")


# -- domain predicates ----------------------------------------------------------

def _re_x_pos(p, v):
    return v["x"].real > 0


def _re_x_gt_re_y(v):
    return v["y"] != 0 and v["x"].real > abs(v["y"].real)


def _re_x_gt_im_y(v):
    return v["y"] != 0 and v["x"].real > abs(v["y"].imag)


def _real_x_gt_y_gt_0(v):
    x, y = v["x"], v["y"]
    return x.imag == 0 and y.imag == 0 and x.real > y.real > 0


def _hecke_r(p: IdentityParams) -> mpf:
    if p.hecke is not None:
        return mpf(p.hecke.r)
    return mpf(p.k) / 2


@dataclass(frozen=True)
class IdentityDef:
    id: IdentityId
    fields: frozenset
    optional: frozenset
    domain_text: str
    predicate: Callable[[IdentityParams, dict], bool]
    build: Callable[[IdentityParams, dict, EvalContext], tuple[Side, Side]]
    hecke_based: bool = False


# -- builders -------------------------------------------------------------------

def _theta_jacobi(p, v, ctx):
    x = v["x"]
    pi = mpmath.pi
    lhs = Side(mpc(1), mpc(2), SeriesSpec(lambda n: mpmath.exp(-pi * n * n * x), Majorant(0, 0, 1), x.real))
    xi = 1 / x
    c = cpow(x, -HALF, ctx)
    rhs = Side(c, 2 * c, SeriesSpec(lambda n: mpmath.exp(-pi * n * n * xi), Majorant(0, 0, 1), xi.real))
    return lhs, rhs


def _theta_k_sides(k, x, ctx):
    pi = mpmath.pi
    r = _r(k)
    lhs = Side(mpc(1), mpc(1), SeriesSpec(lambda n: r(n) * mpmath.exp(-pi * n * x), Majorant(k, 0, 1), x.real))
    xi = 1 / x
    c = cpow(x, -mpf(k) / 2, ctx)
    rhs = Side(c, c, SeriesSpec(lambda n: r(n) * mpmath.exp(-pi * n * xi), Majorant(k, 0, 1), xi.real))
    return lhs, rhs


def _theta_k(p, v, ctx):
    return _theta_k_sides(p.k, v["x"], ctx)


def _popov_classical(p, v, ctx):
    k, x, z = p.k, v["x"], v["z"]
    if z == 0:
        # common factor z^{k/2-1} divided out: the z -> 0 limit is the theta relation
        return _theta_k_sides(k, x, ctx)
    pi = mpmath.pi
    nu = mpf(k) / 2 - 1
    w = mpf(k) / 4 - HALF
    r = _r(k)
    A = cpow(z, nu, ctx) * pi ** w / (2 ** nu * gamma(mpf(k) / 2, ctx))
    e8 = mpmath.exp(z * z / 8)
    sx = cpow(x, HALF, ctx)
    xi = 1 / x

    def lterm(n):
        c = r(n)
        if not c:
            return mpc(0)
        return c * mpf(n) ** (-w) * mpmath.exp(-pi * n * x) * bessel_j(nu, mpmath.sqrt(pi * n) * sx * z, ctx)

    def rterm(n):
        c = r(n)
        if not c:
            return mpc(0)
        return c * mpf(n) ** (-w) * mpmath.exp(-pi * n * xi) * bessel_i(nu, mpmath.sqrt(pi * n) / sx * z, ctx)

    g = bessel_scaled_bound(nu)
    lmaj = Majorant(k, 0, _f((mpmath.sqrt(pi * abs(x)) * abs(z) / 2) ** nu * g),
                    _f(mpmath.sqrt(pi) * abs((sx * z).imag)))
    rmaj = Majorant(k, 0, _f((mpmath.sqrt(pi / abs(x)) * abs(z) / 2) ** nu * g),
                    _f(mpmath.sqrt(pi) * abs((z / sx).real)))
    lhs = Side(A * cpow(x, mpf(k) / 4, ctx) * e8, sx * e8, SeriesSpec(lterm, lmaj, x.real))
    rhs = Side(A * cpow(x, -mpf(k) / 4, ctx) / e8, 1 / (e8 * sx), SeriesSpec(rterm, rmaj, xi.real))
    return lhs, rhs


def _riesz(p, v, ctx):
    k = p.k
    q = p.q if p.q is not None else default_q(k)
    qv = to_real(q)
    xv = to_real(p.x)
    lhs = Side(mpc(riesz_lhs(k, q, p.x, ctx)), mpc(0), None)
    pi = mpmath.pi
    poly = pi ** (mpf(k) / 2) * xv ** (mpf(k) / 2 + qv) * mpmath.rgamma(qv + 1 + mpf(k) / 2)
    rhs = Side(mpc(poly), mpc(pi ** (-qv)), RieszBesselSeries(k, float(qv), float(xv)))
    return lhs, rhs


def _bessel_pair(p, v, ctx, kind):
    k, x, y = p.k, v["x"], v["y"]
    pi = mpmath.pi
    nu = mpf(k) / 4 - HALF
    r = _r(k)
    fn = bessel_j if kind == "J" else bessel_i
    s = x * x + y * y if kind == "J" else x * x - y * y
    xs, ys = x / s, y / s
    P = cpow(pi * y, nu, ctx) / (2 ** nu * gamma(nu + 1, ctx))

    def make(xx, yy):
        def term(n):
            c = r(n)
            if not c:
                return mpc(0)
            return c * mpf(n) ** (-nu) * mpmath.exp(-pi * n * xx) * fn(nu, pi * n * yy, ctx)
        return term

    def margin(xx, yy):
        return xx.real - (abs(yy.imag) if kind == "J" else abs(yy.real))

    g = bessel_scaled_bound(nu)
    lmaj = Majorant(k, 0, _f((pi * abs(y) / 2) ** nu * g))
    rmaj = Majorant(k, 0, _f((pi * abs(ys) / 2) ** nu * g))
    lhs = Side(P, mpc(1), SeriesSpec(make(x, y), lmaj, margin(x, y)))
    rhs = Side(P / cpow(s, mpf(k) / 4, ctx), 1 / cpow(s, HALF, ctx), SeriesSpec(make(xs, ys), rmaj, margin(xs, ys)))
    return lhs, rhs


def _k4_curious(p, v, ctx):
    x, y = v["x"], v["y"]
    pi = mpmath.pi
    r = _r(4)

    def lterm(n):
        c = r(n)
        return c * (mpmath.exp(-pi * n * (x - y)) - mpmath.exp(-pi * n * (x + y))) / n if c else mpc(0)

    a, b = 1 / (x + y), 1 / (x - y)

    def rterm(n):
        c = r(n)
        return c * (mpmath.exp(-pi * n * a) - mpmath.exp(-pi * n * b)) / n if c else mpc(0)

    lhs = Side(2 * pi * y, mpc(1), SeriesSpec(lterm, Majorant(4, -1, 2), x.real - abs(y.real)))
    rhs = Side(2 * pi * y / (x * x - y * y), mpc(1), SeriesSpec(rterm, Majorant(4, -1, 2), min(a.real, b.real)))
    return lhs, rhs


def _k1(p, v, ctx, kind):
    x, y = v["x"], v["y"]
    pi = mpmath.pi
    nu = -mpf(1) / 4
    fn = bessel_j if kind == "J" else bessel_i
    s = x * x + y * y if kind == "J" else x * x - y * y
    xs, ys = x / s, y / s
    g = mpmath.rgamma(nu + 1)

    # the n = 0 term sqrt|n| F_{-1/4}(pi n^2 y) is read as its limit (pi y/2)^{-1/4}/Gamma(3/4)
    def zero_term(yy):
        return cpow(pi * yy / 2, nu, ctx) * g

    def make(xx, yy):
        return lambda n: mpmath.sqrt(n) * mpmath.exp(-pi * n * n * xx) * fn(nu, pi * n * n * yy, ctx)

    def margin(xx, yy):
        return xx.real - (abs(yy.imag) if kind == "J" else abs(yy.real))

    isq = 1 / cpow(s, HALF, ctx)
    lhs = Side(zero_term(y), mpc(2), SeriesSpec(make(x, y), Majorant(0, 0, _f((pi * abs(y) / 2) ** nu * g)), margin(x, y)))
    rhs = Side(isq * zero_term(ys), 2 * isq,
               SeriesSpec(make(xs, ys), Majorant(0, 0, _f((pi * abs(ys) / 2) ** nu * g)), margin(xs, ys)))
    return lhs, rhs


def _whittaker_main(p, v, ctx):
    k, x, y, rho = p.k, v["x"], v["y"], v["rho"]
    _assert_cut_free(x, y)
    pi = mpmath.pi
    nu = mpf(k) / 4 - HALF
    e = mpf(k) / 4
    r = _r(k)
    d_l, d_r, s = _whittaker_margins(x, y)
    xs, ys = x / s, y / s
    beta = _beta(x, y, rho, ctx)

    def make(xx, yy, rr):
        def term(n):
            c = r(n)
            if not c:
                return mpc(0)
            return c * mpf(n) ** (-e) * mpmath.exp(-pi * n * xx) * whittaker_m(rr, nu, 2 * pi * n * yy, ctx)
        return term

    lmaj = Majorant(k, 0, _f(whittaker_m_bound(rho, nu) * (2 * pi * abs(y)) ** e))
    rmaj = Majorant(k, 0, _f(whittaker_m_bound(-rho, nu) * (2 * pi * abs(ys)) ** e))
    lhs = Side(cpow(2 * pi * y, e, ctx), mpc(1), SeriesSpec(make(x, y, rho), lmaj, d_l))
    rhs = Side(cpow(2 * pi * ys, e, ctx) * beta, beta, SeriesSpec(make(xs, ys, -rho), rmaj, d_r))
    return lhs, rhs


def _laguerre_k2(p, v, ctx):
    x, y, rho = v["x"], v["y"], v["rho"]
    _assert_cut_free(x, y)
    pi = mpmath.pi
    r = _r(2)
    d_l, d_r, s = _whittaker_margins(x, y)
    ys = y / s
    beta = _beta(x, y, rho, ctx)

    def lterm(n):
        c = r(n)
        return c * mpmath.exp(-pi * n * (x + y)) * laguerre(rho - HALF, 2 * pi * n * y, ctx) if c else mpc(0)

    b = 1 / (x - y)

    def rterm(n):
        c = r(n)
        return c * mpmath.exp(-pi * n * b) * laguerre(-rho - HALF, 2 * pi * n * ys, ctx) if c else mpc(0)

    isq = 1 / cpow(s, HALF, ctx)
    lhs = Side(mpc(1), mpc(1), SeriesSpec(lterm, Majorant(2, 0, _f(whittaker_m_bound(rho, 0))), d_l))
    rhs = Side(isq * beta, isq * beta, SeriesSpec(rterm, Majorant(2, 0, _f(whittaker_m_bound(-rho, 0))), d_r))
    return lhs, rhs


def _half_rho(p, v, ctx):
    k, x, y = p.k, v["x"], v["y"]
    _assert_cut_free(x, y)
    pi = mpmath.pi
    e = mpf(k) / 4
    r = _r(k)
    d_l, d_r, s = _whittaker_margins(x, y)
    xs, ys = x / s, y / s
    root = _beta(x, y, HALF, ctx)
    G = 2 ** (mpf(k) / 2 - 1) * gamma(e, ctx)

    def make(xx, yy, sign):
        def term(n):
            c = r(n)
            if not c:
                return mpc(0)
            w = pi * n * yy
            return (c * mpf(n) ** (1 - e) * mpmath.exp(-pi * n * xx)
                    * (bessel_i(e - 1, w, ctx) + sign * bessel_i(e, w, ctx)))
        return term

    def pref(yy):
        h = pi * abs(yy) / 2
        return _f(h ** e * bessel_scaled_bound(e) + h ** (e - 1) * bessel_scaled_bound(e - 1))

    lhs = Side(cpow(2 * pi * y, e, ctx) * root, G * pi * y * root, SeriesSpec(make(x, y, 1), Majorant(k, 1, pref(y)), d_l))
    rhs = Side(cpow(2 * pi * ys, e, ctx), G * pi * ys, SeriesSpec(make(xs, ys, -1), Majorant(k, 1, pref(ys)), d_r))
    return lhs, rhs


# -- Hecke-class formulas -----------------------------------------------------------

def _hecke_terms(h: HeckeData):
    def a(n):
        h.check_index(n)
        return h.a[n - 1], h.lam[n - 1]

    def b(n):
        h.check_index(n)
        return h.b[n - 1], h.mu[n - 1]
    return a, b


def _hecke_majorant(h: HeckeData, extra, sqrt_rate=0, weight=0.0):
    """Majorant for a(n) * (kernel bounded by extra * n^weight), or None without an envelope."""
    env = h.envelope
    if env is None:
        return None
    return Majorant(env.k, env.weight + weight, _f(env.prefactor * extra), _f(sqrt_rate))


def _hecke_delta(h: HeckeData, margin, side: str):
    env = h.envelope
    if env is None:
        return None
    slope = env.lambda_slope if side == "l" else env.mu_slope
    return slope * margin / mpmath.pi


def _bochner_sides(h: HeckeData, x, ctx):
    a, b = _hecke_terms(h)
    xi = 1 / x

    def lterm(n):
        c, lam = a(n)
        return c * mpmath.exp(-lam * x)

    def rterm(n):
        c, mu = b(n)
        return c * mpmath.exp(-mu * xi)

    r = h.r
    xr = cpow(x, -r, ctx)
    lhs = Side(-h.phi0, mpc(1), SeriesSpec(lterm, _hecke_majorant(h, 1), _hecke_delta(h, x.real, "l")))
    rhs = Side(h.rho * gamma(r, ctx) * xr, xr, SeriesSpec(rterm, _hecke_majorant(h, 1), _hecke_delta(h, xi.real, "r")))
    return lhs, rhs


def _bochner(p, v, ctx):
    return _bochner_sides(v["hecke"], v["x"], ctx)


def _popov_hecke(p, v, ctx):
    h, x, z = v["hecke"], v["x"], v["z"]
    if z == 0:
        return _bochner_sides(h, x, ctx)
    a, b = _hecke_terms(h)
    r = h.r
    nu = r - 1
    sx = cpow(x, HALF, ctx)
    e8 = mpmath.exp(z * z / 8)
    xi = 1 / x
    G = 2 ** nu * gamma(r, ctx) * cpow(z, -nu, ctx)

    def lterm(n):
        c, lam = a(n)
        if not c:
            return mpc(0)
        return c * lam ** (-nu / 2) * mpmath.exp(-lam * x) * bessel_j(nu, mpmath.sqrt(lam) * sx * z, ctx)

    def rterm(n):
        c, mu = b(n)
        if not c:
            return mpc(0)
        return c * mu ** (-nu / 2) * mpmath.exp(-mu * xi) * bessel_i(nu, mpmath.sqrt(mu) / sx * z, ctx)

    g = bessel_scaled_bound(nu)
    env = h.envelope
    lmaj = rmaj = None
    if env is not None:
        lmaj = _hecke_majorant(h, (abs(sx * z) / 2) ** nu * g, mpmath.sqrt(env.lambda_slope) * abs((sx * z).imag))
        rmaj = _hecke_majorant(h, (abs(z / sx) / 2) ** nu * g, mpmath.sqrt(env.mu_slope) * abs((z / sx).real))
    lhs = Side(-h.phi0 * e8, G * cpow(x, -nu / 2, ctx) * e8, SeriesSpec(lterm, lmaj, _hecke_delta(h, x.real, "l")))
    rhs = Side(h.rho * gamma(r, ctx) * cpow(x, -r, ctx) / e8, G * cpow(x, -(r + 1) / 2, ctx) / e8,
               SeriesSpec(rterm, rmaj, _hecke_delta(h, xi.real, "r")))
    return lhs, rhs


def _whittaker_hecke(p, v, ctx):
    h, x, y, mu = v["hecke"], v["x"], v["y"], v["rho"]
    _assert_cut_free(x, y)
    a, b = _hecke_terms(h)
    r = h.r
    nu = (r - 1) / 2
    d_l, d_r, s = _whittaker_margins(x, y)
    xs, ys = x / s, y / s
    beta = _beta(x, y, mu, ctx)

    def make(coeff, xx, yy, mm):
        def term(n):
            c, lam = coeff(n)
            if not c:
                return mpc(0)
            return c * lam ** (-r / 2) * mpmath.exp(-lam * xx) * whittaker_m(mm, nu, 2 * lam * yy, ctx)
        return term

    if p.variant == "printed":
        rpoly = h.rho * cpow(2 * y, r / 2, ctx) / cpow(x * x + y * y, r / 2, ctx) * gamma(r, ctx)
    else:
        rpoly = h.rho * gamma(r, ctx) * cpow(2 * ys, r / 2, ctx) * beta
    lmaj = _hecke_majorant(h, whittaker_m_bound(mu, nu) * (2 * abs(y)) ** (r / 2))
    rmaj = _hecke_majorant(h, whittaker_m_bound(-mu, nu) * (2 * abs(ys)) ** (r / 2))
    lhs = Side(-h.phi0 * cpow(2 * y, r / 2, ctx), mpc(1), SeriesSpec(make(a, x, y, mu), lmaj, _hecke_delta(h, d_l, "l")))
    rhs = Side(rpoly, beta, SeriesSpec(make(b, xs, ys, -mu), rmaj, _hecke_delta(h, d_r, "r")))
    return lhs, rhs


def _hecke_bessel(p, v, ctx, kind):
    h, x, y = v["hecke"], v["x"], v["y"]
    a, b = _hecke_terms(h)
    r = h.r
    nu = (r - 1) / 2
    fn = bessel_j if kind == "J" else bessel_i
    s = x * x + y * y if kind == "J" else x * x - y * y
    xs, ys = x / s, y / s

    def make(coeff, xx, yy):
        def term(n):
            c, lam = coeff(n)
            if not c:
                return mpc(0)
            return c * lam ** (-nu) * mpmath.exp(-lam * xx) * fn(nu, lam * yy, ctx)
        return term

    def margin(xx, yy):
        return xx.real - (abs(yy.imag) if kind == "J" else abs(yy.real))

    g = bessel_scaled_bound(nu)
    lpoly = -h.phi0 / gamma((r + 1) / 2, ctx) * cpow(y / 2, nu, ctx)
    rpoly = h.rho * gamma(r / 2, ctx) / mpmath.sqrt(mpmath.pi) * cpow(2 * y, nu, ctx) / cpow(s, r / 2, ctx)
    lmaj = _hecke_majorant(h, (abs(y) / 2) ** nu * g)
    rmaj = _hecke_majorant(h, (abs(ys) / 2) ** nu * g)
    lhs = Side(lpoly, mpc(1), SeriesSpec(make(a, x, y), lmaj, _hecke_delta(h, margin(x, y), "l")))
    rhs = Side(rpoly, 1 / cpow(s, HALF, ctx), SeriesSpec(make(b, xs, ys), rmaj, _hecke_delta(h, margin(xs, ys), "r")))
    return lhs, rhs


def _tau_whittaker(p, v, ctx):
    x, y, mu = v["x"], v["y"], v["rho"]
    _assert_cut_free(x, y)
    pi = mpmath.pi
    nu = mpf(11) / 2
    d_l, d_r, s = _whittaker_margins(x, y)
    xs, ys = x / s, y / s
    beta = _beta(x, y, mu, ctx)

    def make(xx, yy, mm):
        def term(n):
            c = _tau_coeff(n)
            return c * mpf(n) ** -6 * mpmath.exp(-2 * pi * n * xx) * whittaker_m(mm, nu, 4 * pi * n * yy, ctx)
        return term

    # |tau(n)| <= d(n) n^{11/2} <= 2 n^6
    lmaj = Majorant(0, 6, _f(2 * whittaker_m_bound(mu, nu) * (4 * pi * abs(y)) ** 6))
    rmaj = Majorant(0, 6, _f(2 * whittaker_m_bound(-mu, nu) * (4 * pi * abs(ys)) ** 6))
    lhs = Side(mpc(0), mpc(1), SeriesSpec(make(x, y, mu), lmaj, 2 * d_l))
    rhs = Side(mpc(0), beta, SeriesSpec(make(xs, ys, -mu), rmaj, 2 * d_r))
    return lhs, rhs


# -- registry -------------------------------------------------------------------

def _k_ok(p):
    return p.k is not None and int(p.k) == p.k and p.k >= 1


def _rho_strip(v, half_width):
    return abs(v["rho"].real) < half_width


def _riesz_pred(p, v):
    try:
        xv = to_real(p.x)
        q = to_real(p.q if p.q is not None else default_q(p.k))
    except ValueError:
        return False
    return xv > 0 and q > mpf(p.k - 1) / 2


REGISTRY: dict[IdentityId, IdentityDef] = {}


def _register(id, fields, domain_text, predicate, build, optional=(), hecke_based=False):
    REGISTRY[id] = IdentityDef(id, frozenset(fields), frozenset(optional), domain_text,
                               predicate, build, hecke_based)


I = IdentityId
_register(I.POPOV_CLASSICAL, {"k", "x", "z"}, "Re(x) > 0, z complex",
          lambda p, v: _k_ok(p) and v["x"].real > 0, _popov_classical)
_register(I.THETA_JACOBI, {"x"}, "Re(x) > 0", lambda p, v: v["x"].real > 0, _theta_jacobi)
_register(I.THETA_K, {"k", "x"}, "Re(x) > 0", lambda p, v: _k_ok(p) and v["x"].real > 0, _theta_k)
_register(I.RIESZ_CN, {"k", "x"}, "x > 0 real, q > (k-1)/2 (default q = (k-1)/2 + 2)",
          lambda p, v: _k_ok(p) and _riesz_pred(p, v), _riesz, optional={"q"})
_register(I.BESSEL_J_PAIR, {"k", "x", "y"}, "Re(x) > |Im(y)|, y != 0",
          lambda p, v: _k_ok(p) and _re_x_gt_im_y(v), lambda p, v, c: _bessel_pair(p, v, c, "J"))
_register(I.BESSEL_I_PAIR, {"k", "x", "y"}, "Re(x) > |Re(y)|, y != 0",
          lambda p, v: _k_ok(p) and _re_x_gt_re_y(v), lambda p, v, c: _bessel_pair(p, v, c, "I"))
_register(I.K4_CURIOUS, {"x", "y"}, "x > y > 0 real", lambda p, v: _real_x_gt_y_gt_0(v), _k4_curious)
_register(I.K1_J, {"x", "y"}, "x > y > 0 real", lambda p, v: _real_x_gt_y_gt_0(v),
          lambda p, v, c: _k1(p, v, c, "J"))
_register(I.K1_I, {"x", "y"}, "x > y > 0 real", lambda p, v: _real_x_gt_y_gt_0(v),
          lambda p, v, c: _k1(p, v, c, "I"))
_register(I.WHITTAKER_MAIN, {"k", "x", "y", "rho"}, "Re(x) > |Re(y)|, y != 0, -k/4 < Re(rho) < k/4",
          lambda p, v: _k_ok(p) and _re_x_gt_re_y(v) and _rho_strip(v, mpf(p.k) / 4), _whittaker_main)
_register(I.POPOV_HECKE, {"x", "z"}, "Re(x) > 0, z complex",
          lambda p, v: v["x"].real > 0, _popov_hecke, hecke_based=True)
_register(I.WHITTAKER_HECKE, {"x", "y", "rho"}, "Re(x) > |Re(y)|, y != 0, mu real with -r/2 < mu < r/2",
          lambda p, v: _re_x_gt_re_y(v) and v["rho"].imag == 0 and _rho_strip(v, _hecke_r(p) / 2),
          _whittaker_hecke,
          optional={"variant"}, hecke_based=True)
_register(I.BOCHNER_HECKE, {"x"}, "Re(x) > 0", lambda p, v: v["x"].real > 0, _bochner, hecke_based=True)
_register(I.HECKE_J, {"x", "y"}, "Re(x) > |Im(y)|, y != 0", lambda p, v: _re_x_gt_im_y(v),
          lambda p, v, c: _hecke_bessel(p, v, c, "J"), hecke_based=True)
_register(I.HECKE_I, {"x", "y"}, "Re(x) > |Re(y)|, y != 0", lambda p, v: _re_x_gt_re_y(v),
          lambda p, v, c: _hecke_bessel(p, v, c, "I"), hecke_based=True)
_register(I.TAU_WHITTAKER, {"x", "y", "rho"}, "Re(x) > |Re(y)|, y != 0, -6 < Re(mu) < 6",
          lambda p, v: _re_x_gt_re_y(v) and _rho_strip(v, 6), _tau_whittaker)
_register(I.LAGUERRE_K2, {"x", "y", "rho"}, "Re(x) > |Re(y)|, y != 0, -1/2 < Re(rho) < 1/2",
          lambda p, v: _re_x_gt_re_y(v) and _rho_strip(v, HALF), _laguerre_k2)
_register(I.HALF_RHO, {"k", "x", "y"}, "Re(x) > |Re(y)|, y != 0, k >= 3",
          lambda p, v: _k_ok(p) and p.k >= 3 and _re_x_gt_re_y(v), _half_rho)
del I


def check_arity(p: IdentityParams):
    d = REGISTRY[p.id]
    present = p.present()
    if d.hecke_based:
        if (p.hecke is None) == (p.k is None):
            raise ParamError(f"{p.id.value} needs exactly one of hecke, k")
        present -= {"hecke", "k"}
    missing = d.fields - present
    extra = present - d.fields - d.optional
    if missing:
        raise ParamError(f"{p.id.value} is missing {sorted(missing)}")
    if extra:
        raise ParamError(f"{p.id.value} does not take {sorted(extra)}")
    if p.variant is not None and p.variant not in ("printed", "corrected"):
        raise ParamError("variant must be 'printed' or 'corrected'")


def resolve_values(p: IdentityParams) -> dict:
    """Numeric parameters converted at the current mpmath precision."""
    v = {}
    for f in ("x", "y", "z", "rho"):
        val = getattr(p, f)
        if val is not None:
            v[f] = to_cvalue(val)
    return v
