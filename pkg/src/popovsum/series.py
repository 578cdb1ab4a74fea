"""Truncated series with certified tail bounds.

Every certified series carries a majorant of the form

    |term(n)| <= prefactor * (3 sqrt n)^k * n^weight * exp(sqrt_rate sqrt(n) - pi delta n)

where (3 sqrt n)^k dominates r_k(n) <= (2 floor(sqrt n) + 1)^k and delta is
the decay margin of the identity's validity domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import mpmath
from mpmath import mp, mpf

from .errors import ConvergenceError, DomainError


@dataclass(frozen=True)
class TruncationPolicy:
    target_tol: float = 1e-36
    max_terms: int = 20000
    consecutive_small: int = 3
    decay_margin: float | None = None

    def __post_init__(self):
        if not self.target_tol > 0:
            raise ValueError("target_tol must be positive")
        if self.max_terms < 16:
            raise ValueError("max_terms must be at least 16")
        if self.consecutive_small < 1:
            raise ValueError("consecutive_small must be at least 1")
        if self.decay_margin is not None and self.decay_margin <= 0:
            raise DomainError("decay_margin must be positive")


@dataclass(frozen=True)
class Majorant:
    """Envelope of |term(n)|; the decay margin comes from the policy."""

    k: int = 0
    weight: float = 0.0
    prefactor: float = 1.0
    sqrt_rate: float = 0.0


@dataclass
class SeriesResult:
    value: object
    n_terms: int
    tail_bound: mpf
    certified: bool
    kind: str = "geometric"


def tail_bound_geometric(k: int, delta, weight_exponent, prefactor, N: int, sqrt_rate=0) -> mpf:
    """Upper bound for sum_{n>N} prefactor (3 sqrt n)^k n^w exp(c sqrt n - pi delta n).

    With c > 0 the inequality c sqrt(n) <= (pi delta / 4) n + c^2 / (pi delta)
    trades a quarter of the decay rate for a constant.  The remaining
    n^p e^{-a n} tail is compared with a geometric series whose ratio is the
    largest term ratio beyond N.  Returns +inf while that ratio is >= 1.
    """
    with mp.workprec(64):
        delta = mpf(delta)
        if delta <= 0:
            raise DomainError("tail certificate needs delta > 0")
        prefactor = mpf(prefactor)
        if prefactor < 0:
            raise DomainError("prefactor must be non-negative")
        if prefactor == 0:
            return mpf(0)
        c = mpf(sqrt_rate)
        a = mpmath.pi * delta
        const = prefactor * mpf(3) ** k
        if c > 0:
            a = a * 3 / 4
            const *= mpmath.exp(c * c / (mpmath.pi * delta))
        p = mpf(k) / 2 + mpf(weight_exponent)
        M = mpf(max(N, 0) + 1)
        q = (1 + 1 / M) ** max(p, 0) * mpmath.exp(-a)
        if q >= 1:
            return mpf("inf")
        bound = const * M ** p * mpmath.exp(-a * M) / (1 - q)
        return bound * (1 + mpf(2) ** -40)


def sum_series(term: Callable[[int], object], policy: TruncationPolicy,
               majorant: Majorant | None = None, start: int = 1, scale=0) -> SeriesResult:
    """Sum ``term(start) + term(start + 1) + ...`` until the stopping rule fires.

    The heuristic rule wants ``policy.consecutive_small`` successive terms
    below ``target_tol * max(|partial|, scale)``; with a majorant the
    geometric tail must also be below that level, and the result is
    certified.  ``scale`` lets callers measure smallness against the full
    side of an identity rather than this series alone.
    """
    if majorant is not None and policy.decay_margin is None:
        raise DomainError("a majorant needs policy.decay_margin")
    s = 0
    small = 0
    recent = []
    for i in range(policy.max_terms):
        n = start + i
        t = term(n)
        s += t
        at = abs(t)
        level = policy.target_tol * max(abs(s), scale)
        recent.append(at)
        if len(recent) > policy.consecutive_small:
            recent.pop(0)
        small = small + 1 if at <= level else 0
        if small < policy.consecutive_small:
            continue
        if majorant is None:
            return SeriesResult(s, i + 1, max(recent) * policy.consecutive_small, False, "heuristic")
        tb = tail_bound_geometric(majorant.k, policy.decay_margin, majorant.weight,
                                  majorant.prefactor, n, majorant.sqrt_rate)
        if tb <= level:
            return SeriesResult(s, i + 1, tb, True)
    raise ConvergenceError(f"series did not converge in {policy.max_terms} terms",
                           partial=s, n_terms=policy.max_terms)


def doubling_gap(term: Callable[[int], object], result: SeriesResult, start: int = 1):
    """|S_2N - S_N| computed as the explicit block sum of terms N+1 .. 2N."""
    n0 = start + result.n_terms
    return abs(sum((term(n) for n in range(n0, n0 + result.n_terms)), 0))
