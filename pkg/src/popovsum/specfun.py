"""Configurable-precision complex special functions.

Gamma, principal-branch powers, Kummer 1F1, Whittaker M, Bessel J and I
(ascending series) and the Laguerre function.  Series kernels track the
largest term they add; when cancellation eats into the guard bits the
series is re-summed at a larger significand.
"""

from __future__ import annotations

import math

import mpmath
from mpmath import mp, mpc, mpf

from .context import GUARD_BITS, EvalContext, is_near_nonpositive_integer, to_cvalue
from .errors import ConvergenceError, DomainError, PoleError

_MAX_ESCALATIONS = 6
_CONSECUTIVE_SMALL = 3


def _default_ctx(ctx):
    return ctx if ctx is not None else EvalContext()


def _round(value, ctx: EvalContext) -> mpc:
    with mp.workprec(ctx.precision):
        return mpc(+value)


def _escalate(kernel, ctx: EvalContext, what: str):
    """Run ``kernel(prec) -> (value, peak)`` until cancellation stays inside the guard bits."""
    prec = ctx.work_prec
    zero_hits = 0
    for _ in range(_MAX_ESCALATIONS + 1):
        with mp.workprec(prec):
            value, peak = kernel(prec)
            if value == 0:
                if peak == 0:
                    return value
                zero_hits += 1
                if zero_hits >= 2:
                    return value
                loss = prec
            else:
                loss = float(mpmath.log(peak / abs(value), 2)) if peak > abs(value) else 0.0
        if loss <= prec - ctx.precision - 8:
            return value
        prec = max(ctx.work_prec + int(math.ceil(loss)) + 8, prec + 16)
    raise ConvergenceError(f"{what}: cancellation not resolved after {_MAX_ESCALATIONS} escalations")


def gamma(z, ctx: EvalContext | None = None) -> mpc:
    """Complex Gamma at working precision."""
    ctx = _default_ctx(ctx)
    with mp.workprec(ctx.work_prec):
        z = to_cvalue(z)
        if is_near_nonpositive_integer(z, ctx.pole_tol):
            raise PoleError(f"Gamma has a pole at {z}")
        g = mpmath.gamma(z)
    return _round(g, ctx)


def rgamma(z, ctx: EvalContext | None = None) -> mpc:
    """1/Gamma(z); zero at the poles."""
    ctx = _default_ctx(ctx)
    with mp.workprec(ctx.work_prec):
        g = mpmath.rgamma(to_cvalue(z))
    return _round(g, ctx)


def cpow(base, exponent, ctx: EvalContext | None = None) -> mpc:
    """Principal branch exp(exponent * (ln|base| + i Arg base)), Arg in (-pi, pi]."""
    ctx = _default_ctx(ctx)
    with mp.workprec(ctx.work_prec):
        b = to_cvalue(base)
        e = to_cvalue(exponent)
        if b == 0:
            if e.real > 0:
                return mpc(0)
            raise DomainError("zero base needs an exponent with positive real part")
        if e == 0:
            return _round(mpc(1), ctx)
        v = mpmath.exp(e * mpmath.log(b))
    return _round(v, ctx)


def _kummer_sum(a: mpc, c: mpc, z: mpc, tol, max_terms: int):
    t = mpc(1)
    s = mpc(1)
    peak = mpf(1)
    small = 0
    for k in range(max_terms):
        t = t * (a + k) * z / ((c + k) * (k + 1))
        s += t
        at = abs(t)
        if at > peak:
            peak = at
        if at <= tol * abs(s):
            small += 1
            # terms must also be past their peak before we trust the smallness
            decaying = abs((a + k + 1) * z) < abs(c + k + 1) * (k + 2)
            if small >= _CONSECUTIVE_SMALL and (decaying or t == 0):
                return s, peak
        else:
            small = 0
    raise ConvergenceError("1F1 series hit max_terms", partial=s, n_terms=max_terms)


def kummer_1f1(a, c, z, ctx: EvalContext | None = None) -> mpc:
    """Kummer's 1F1(a; c; z) by its Taylor series.

    For Re z < 0 the series is summed for 1F1(c - a; c; -z) and multiplied by
    e^z, which is the same function without the alternating cancellation.
    """
    ctx = _default_ctx(ctx)

    def kernel(prec):
        aa, cc, zz = to_cvalue(a), to_cvalue(c), to_cvalue(z)
        if is_near_nonpositive_integer(cc, ctx.pole_tol):
            raise PoleError(f"1F1 lower parameter {cc} is a non-positive integer")
        if zz == 0:
            return mpc(1), mpf(1)
        if zz.real < 0:
            s, peak = _kummer_sum(cc - aa, cc, -zz, ctx.term_tol, ctx.max_terms)
            return mpmath.exp(zz) * s, peak * abs(mpmath.exp(zz))
        return _kummer_sum(aa, cc, zz, ctx.term_tol, ctx.max_terms)

    return _round(_escalate(kernel, ctx, "1F1"), ctx)


def whittaker_m(rho, nu, z, ctx: EvalContext | None = None) -> mpc:
    """M_{rho,nu}(z) = z^{nu+1/2} e^{-z/2} 1F1(nu - rho + 1/2; 2 nu + 1; z)."""
    ctx = _default_ctx(ctx)
    with mp.workprec(ctx.work_prec):
        r, n, zz = to_cvalue(rho), to_cvalue(nu), to_cvalue(z)
        if is_near_nonpositive_integer(2 * n + 1, ctx.pole_tol):
            raise PoleError("2 nu must not be a negative integer")
    inner = EvalContext(precision=ctx.work_prec, max_terms=ctx.max_terms)
    with mp.workprec(inner.work_prec):
        f = kummer_1f1(n - r + mpf(1) / 2, 2 * n + 1, zz, inner)
        p = cpow(zz, n + mpf(1) / 2, inner)
        v = p * mpmath.exp(-zz / 2) * f
    return _round(v, ctx)


def whittaker_m_scaled(rho, nu, z, ctx: EvalContext | None = None) -> mpc:
    """Entire part M_{rho,nu}(z) / z^{nu+1/2}; equals 1 at z = 0."""
    ctx = _default_ctx(ctx)
    inner = EvalContext(precision=ctx.work_prec, max_terms=ctx.max_terms)
    with mp.workprec(inner.work_prec):
        r, n, zz = to_cvalue(rho), to_cvalue(nu), to_cvalue(z)
        v = mpmath.exp(-zz / 2) * kummer_1f1(n - r + mpf(1) / 2, 2 * n + 1, zz, inner)
    return _round(v, ctx)


def _bessel_scaled(nu, z, sign: int, ctx: EvalContext) -> mpc:
    # sum_m (sign z^2/4)^m / (m! Gamma(nu + m + 1))
    def kernel(prec):
        n, zz = to_cvalue(nu), to_cvalue(z)
        if is_near_nonpositive_integer(n, ctx.pole_tol) and n.real < -ctx.pole_tol:
            raise PoleError(f"Bessel order {n} is a negative integer")
        w = sign * zz * zz / 4
        t = mpmath.rgamma(n + 1)
        s = t
        peak = abs(t)
        small = 0
        for m in range(ctx.max_terms):
            t = t * w / ((m + 1) * (n + m + 1))
            s += t
            at = abs(t)
            if at > peak:
                peak = at
            if at <= ctx.term_tol * abs(s):
                small += 1
                if small >= _CONSECUTIVE_SMALL and abs(w) < (m + 2) * abs(n + m + 2):
                    return s, peak
            else:
                small = 0
        raise ConvergenceError("Bessel series hit max_terms", partial=s, n_terms=ctx.max_terms)

    return _escalate(kernel, ctx, "Bessel")


def bessel_j_scaled(nu, z, ctx: EvalContext | None = None) -> mpc:
    """(z/2)^{-nu} J_nu(z), entire in z."""
    ctx = _default_ctx(ctx)
    return _round(_bessel_scaled(nu, z, -1, ctx), ctx)


def bessel_i_scaled(nu, z, ctx: EvalContext | None = None) -> mpc:
    """(z/2)^{-nu} I_nu(z), entire in z."""
    ctx = _default_ctx(ctx)
    return _round(_bessel_scaled(nu, z, 1, ctx), ctx)


def _bessel(nu, z, sign, ctx):
    ctx = _default_ctx(ctx)
    inner = EvalContext(precision=ctx.work_prec, max_terms=ctx.max_terms)
    with mp.workprec(inner.work_prec):
        n, zz = to_cvalue(nu), to_cvalue(z)
        s = _bessel_scaled(n, zz, sign, ctx)
        if zz == 0:
            if n == 0:
                return _round(s, ctx)
            if n.real > 0:
                return mpc(0)
            raise DomainError("J_nu / I_nu is singular at z = 0 for Re(nu) <= 0, nu != 0")
        v = cpow(zz / 2, n, inner) * s
    return _round(v, ctx)


def bessel_j(nu, z, ctx: EvalContext | None = None) -> mpc:
    """J_nu(z) = (z/2)^nu sum_m (-z^2/4)^m / (m! Gamma(nu + m + 1))."""
    return _bessel(nu, z, -1, ctx)


def bessel_i(nu, z, ctx: EvalContext | None = None) -> mpc:
    """I_nu(z) = (z/2)^nu sum_m (z^2/4)^m / (m! Gamma(nu + m + 1))."""
    return _bessel(nu, z, 1, ctx)


def laguerre(mu, z, ctx: EvalContext | None = None) -> mpc:
    """Laguerre function L_mu(z) = 1F1(-mu; 1; z)."""
    ctx = _default_ctx(ctx)
    with mp.workprec(ctx.work_prec):
        m = to_cvalue(mu)
    return kummer_1f1(-m, 1, z, ctx)


# -- bounds used by tail certificates -------------------------------------------

def bessel_scaled_bound(nu) -> mpf:
    """C with |(z/2)^{-nu} I_nu(z)| <= C e^{|Re z|} (and the J analogue with |Im z|).

    Valid for real nu >= -1/2: the Poisson integral gives C = 1/Gamma(nu+1) for
    nu > -1/2, and I_{-1/2}(z) = sqrt(2/(pi z)) cosh z gives the same constant
    at nu = -1/2.
    """
    nu = mpf(nu)
    if nu < -mpf(1) / 2:
        raise DomainError("bound needs real nu >= -1/2")
    return mpmath.rgamma(nu + 1)


def whittaker_m_bound(rho, nu) -> mpf:
    """C with |M_{rho,nu}(z)| <= C |z|^{nu+1/2} e^{|Re z|/2} for real nu.

    From Kummer's integral 1F1(a;c;z) = Gamma(c)/(Gamma(a)Gamma(c-a)) int_0^1
    e^{zt} t^{a-1} (1-t)^{c-a-1} dt, needing Re(nu -+ rho) + 1/2 > 0.
    A 1% safety factor covers the low-precision evaluation.
    """
    with mp.workprec(64):
        rho, nu = mpc(rho), mpf(nu)
        a = nu - rho + mpf(1) / 2
        b = nu + rho + mpf(1) / 2
        if a.real <= 0 or b.real <= 0:
            raise DomainError("Whittaker bound needs |Re rho| < nu + 1/2")
        c = 2 * nu + 1
        const = abs(mpmath.gamma(c)) * mpmath.beta(a.real, b.real) / abs(mpmath.gamma(a) * mpmath.gamma(b))
        return const * mpf("1.01")
