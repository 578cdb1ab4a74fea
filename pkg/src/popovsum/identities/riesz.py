"""Riesz sums of r_k(n) and their Bessel-series expansion.

The Bessel side converges only polynomially (terms ~ n^{-2} at the default
q), so it is summed in float64 over up to 10**6 terms with scipy's Bessel J
and carries a semi-certified tail bound: an Abel-summation bound built on the
lattice-point count and the envelope |J_nu(t)| <= C t^{-1/2} with C measured
on [10, 10**4] and doubled.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from mpmath import mp, mpc, mpf
from scipy import special

from ..arith import rk_array, rk_values
from ..context import EvalContext, to_real
from ..errors import DomainError
from ..series import SeriesResult, TruncationPolicy

CN_TERM_CAP = 10**6
CN_TOL_TIER = 1e-6


def default_q(k: int) -> Fraction:
    return Fraction(k - 1, 2) + 2


def is_exact_integer(x) -> bool:
    if isinstance(x, bool):
        return False
    if isinstance(x, int):
        return True
    return isinstance(x, Fraction) and x.denominator == 1


def riesz_lhs(k: int, q, x, ctx: EvalContext | None = None) -> mpf:
    """(1/Gamma(q+1)) sum'_{0 <= n <= x} r_k(n) (x - n)^q.

    The endpoint n = x gets weight 1/2 only when q == 0 and x is an exact
    integer (int or Fraction with denominator 1).
    """
    ctx = ctx or EvalContext()
    with mp.workprec(ctx.work_prec):
        qv = to_real(q)
        xv = to_real(x)
        if xv < 0:
            raise DomainError("Riesz sums need x >= 0")
        top = int(mpmath.floor(xv))
        table = rk_values(k, top)
        half_endpoint = qv == 0 and is_exact_integer(x)
        total = mpf(0)
        for n in range(top + 1):
            c = table[n]
            if not c:
                continue
            if n == top and half_endpoint:
                total += mpf(c) / 2
            elif qv == 0:
                total += c
            else:
                total += c * (xv - n) ** qv
        out = total * mpmath.rgamma(qv + 1)
    with mp.workprec(ctx.precision):
        return +out


@lru_cache(maxsize=32)
def envelope_constant(nu: float) -> float:
    """Twice max sqrt(t) |J_nu(t)| over a dense grid of t in [10, 10**4]."""
    t = np.concatenate([np.linspace(10.0, 200.0, 40001), np.geomspace(200.0, 1e4, 200001)])
    return 2.0 * float(np.max(np.sqrt(t) * np.abs(special.jv(nu, t))))


class RieszBesselSeries:
    """pi^{-q} sum_n r_k(n) (x/n)^{k/4+q/2} J_{k/2+q}(2 pi sqrt(n x)), without the pi^{-q}."""

    def __init__(self, k: int, q: float, x: float, term_cap: int = CN_TERM_CAP):
        if not q > (k - 1) / 2:
            raise DomainError("the Bessel side needs q > (k-1)/2")
        self.k, self.q, self.x = k, float(q), float(x)
        self.term_cap = term_cap
        self.p = k / 4 + self.q / 2
        self.nu = k / 2 + self.q

    def tail_bound(self, N: int) -> float:
        """Semi-certified bound on sum_{n>N} |term n| (valid once 2 pi sqrt(N x) >= 10)."""
        k, x = self.k, self.x
        s = self.p + 0.25
        vol = math.pi ** (k / 2) / math.gamma(k / 2 + 1)
        lattice = vol * (1 + math.sqrt(k) / (2 * math.sqrt(N))) ** k
        abel = lattice * s * N ** (k / 2 - s) / (s - k / 2)
        return envelope_constant(self.nu) * x ** (self.p - 0.25) / math.sqrt(2 * math.pi) * abel

    def choose_terms(self, target: float) -> int:
        n_min = int(math.ceil(100.0 / (4 * math.pi**2 * self.x))) + 1
        if self.tail_bound(self.term_cap) > target:
            return self.term_cap
        lo, hi = n_min, self.term_cap
        if self.tail_bound(lo) <= target:
            return lo
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.tail_bound(mid) <= target:
                hi = mid
            else:
                lo = mid
        return hi

    def partial(self, N: int, start: int = 1) -> float:
        r = rk_array(self.k, N)[start:].astype(np.float64)
        n = np.arange(start, N + 1, dtype=np.float64)
        terms = r * (self.x / n) ** self.p * special.jv(self.nu, 2 * math.pi * np.sqrt(n * self.x))
        return math.fsum(terms)

    def run(self, policy: TruncationPolicy, scale=0) -> SeriesResult:
        # scale arrives in units of the series itself (the pi^{-q} factor removed)
        target = policy.target_tol * max(float(abs(scale)), 1e-300)
        N = self.choose_terms(target)
        value = self.partial(N)
        tb = self.tail_bound(N)
        return SeriesResult(mpc(value), N, mpf(tb), False, "semi")
