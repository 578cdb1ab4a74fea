"""Brute-force reference implementations for cross-checking the main path.

Each oracle uses a different algorithm from the code it audits: lattice
enumeration instead of theta-series convolution, naive polynomial
multiplication instead of the pentagonal expansion, and float64 quadrature
of integral representations instead of Taylor series.  Nothing here is used
when evaluating identities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from mpmath import mp, mpc
from scipy import special

from .context import EvalContext, to_cvalue
from .errors import ConvergenceError, DomainError

MAX_PANELS = 4096


@dataclass(frozen=True)
class QuadSpec:
    """Panel quadrature settings; ``upper_cut=None`` picks max(40, |z| + 40 ln 10)."""

    upper_cut: float | None = None
    panels: int = 16
    nodes_per_panel: int = 24
    rel_tol: float = 1e-12

    def __post_init__(self):
        if self.upper_cut is not None and not self.upper_cut > 0:
            raise ValueError("upper_cut must be positive")
        if self.panels < 4:
            raise ValueError("panels must be at least 4")
        if self.nodes_per_panel < 2:
            raise ValueError("nodes_per_panel must be at least 2")

    def cut_for(self, z: complex) -> float:
        if self.upper_cut is not None:
            return float(self.upper_cut)
        return max(40.0, abs(z) + 40 * math.log(10))


# -- coefficient oracles ----------------------------------------------------------

@lru_cache(maxsize=None)
def rk_enumerate(k: int, n: int) -> int:
    """Count v in Z^k with |v|^2 = n by recursion over the first coordinate."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0:
        return 0
    if k == 1:
        if n == 0:
            return 1
        s = math.isqrt(n)
        return 2 if s * s == n else 0
    total = 0
    v = 0
    while v * v <= n:
        c = rk_enumerate(k - 1, n - v * v)
        total += c if v == 0 else 2 * c
        v += 1
    return total


def eta24_direct(N: int) -> list[int]:
    """Coefficients of q prod_{m<=N} (1 - q^m)^24 mod q^{N+1}, by repeated multiplication."""
    if N < 0:
        raise ValueError("N must be >= 0")
    poly = [0] * (N + 1)
    if N >= 1:
        poly[1] = 1
    for m in range(1, N + 1):
        for _ in range(24):
            # in-place multiply by (1 - q^m), high degrees first
            for d in range(N, m - 1, -1):
                poly[d] -= poly[d - m]
    return poly


# -- quadrature oracles ----------------------------------------------------------

@lru_cache(maxsize=64)
def _legendre(n: int):
    return np.polynomial.legendre.leggauss(n)


@lru_cache(maxsize=64)
def _jacobi(n: int, beta: float):
    return special.roots_jacobi(n, 0.0, beta)


def _panels(f, edges: np.ndarray, n: int) -> complex:
    x, w = _legendre(n)
    a, b = edges[:-1, None], edges[1:, None]
    t = (a + b) / 2 + (b - a) / 2 * x[None, :]
    vals = f(t.ravel()).reshape(t.shape)
    return complex(np.sum(vals * w[None, :] * (b - a) / 2))


def _refine(integrate, spec: QuadSpec, what: str) -> complex:
    """Double the panel count until two successive results agree."""
    panels = spec.panels
    prev = integrate(panels)
    while panels < MAX_PANELS:
        panels *= 2
        cur = integrate(panels)
        if abs(cur - prev) <= spec.rel_tol * max(abs(cur), 1e-300):
            return cur
        prev = cur
    raise ConvergenceError(f"{what}: quadrature did not settle within {MAX_PANELS} panels",
                           partial=prev, n_terms=MAX_PANELS)


def _as_mpc(v: complex, ctx: EvalContext | None) -> mpc:
    ctx = ctx or EvalContext()
    with mp.workprec(ctx.precision):
        return mpc(v.real, v.imag)


def whittaker_m_quad(rho, nu, z, spec: QuadSpec | None = None, ctx: EvalContext | None = None) -> mpc:
    """M_{rho,nu}(z) from its Bessel-kernel integral representations.

    First form, for Re(rho + nu) + 1/2 > 0:
        Gamma(1+2nu) sqrt(z) / Gamma(1/2+rho+nu) e^{z/2} int_0^inf e^{-t} t^{rho-1/2} J_{2nu}(2 sqrt(zt)) dt.
    Otherwise the second form, for Re(rho - nu) - 1/2 < 0:
        Gamma(1+2nu) sqrt(z) / Gamma(1/2-rho+nu) e^{-z/2} int_0^inf e^{-t} t^{-rho-1/2} I_{2nu}(2 sqrt(zt)) dt.
    The t^{a} endpoint behaviour on [0, 1] is absorbed into Gauss-Jacobi
    weights; [1, T] uses Gauss-Legendre panels.  float64 throughout, real nu.
    """
    spec = spec or QuadSpec()
    with mp.workprec(64):
        rho_c, nu_c, z_c = complex(to_cvalue(rho)), complex(to_cvalue(nu)), complex(to_cvalue(z))
    if nu_c.imag != 0:
        raise DomainError("the quadrature oracle needs real nu")
    nu_r = nu_c.real
    if 1 + 2 * nu_r <= 0 and float(1 + 2 * nu_r).is_integer():
        raise DomainError("Gamma(1 + 2 nu) has a pole")
    if (rho_c + nu_r).real + 0.5 > 0:
        e, kernel, sign, g = rho_c - 0.5, special.jv, 1.0, special.gamma(0.5 + rho_c + nu_r)
    elif (rho_c - nu_r).real - 0.5 < 0:
        e, kernel, sign, g = -rho_c - 0.5, special.iv, -1.0, special.gamma(0.5 - rho_c + nu_r)
    else:
        raise DomainError("neither integral representation applies at these rho, nu")
    if z_c == 0:
        return _as_mpc(0j, ctx)
    sz = np.sqrt(z_c)
    # near 0 the integrand behaves like t^{e + nu}
    a = (e + nu_r).real
    T = spec.cut_for(z_c)

    def smooth(t):
        # integrand divided by t^a, evaluated away from the singular power
        return np.exp(-t) * t ** (e - a) * kernel(2 * nu_r, 2 * sz * np.sqrt(t))

    def head(n):
        x, w = _jacobi(n, a)
        t = (1 + x) / 2
        return complex(np.sum(w * smooth(t))) * 0.5 ** (a + 1)

    def integrand(t):
        return np.exp(-t) * t ** e * kernel(2 * nu_r, 2 * sz * np.sqrt(t))

    def integrate(panels):
        n = spec.nodes_per_panel
        return head(2 * n) + _panels(integrand, np.linspace(1.0, T, panels + 1), n)

    total = _refine(integrate, spec, "Whittaker M")
    # past the cut the integrand decays at least like e^{-t/2}
    tail = 2 * abs(integrand(np.array([T]))[0])
    if tail > spec.rel_tol * abs(total):
        raise ConvergenceError(f"Whittaker M: tail beyond T = {T} is {tail:.3g}", partial=total,
                               n_terms=0)
    value = special.gamma(1 + 2 * nu_r) * sz / g * np.exp(sign * z_c / 2) * total
    return _as_mpc(complex(value), ctx)


def bessel_i_poisson(nu, z, spec: QuadSpec | None = None, ctx: EvalContext | None = None) -> mpc:
    """I_nu(z) = (z/2)^nu / (sqrt(pi) Gamma(nu+1/2)) int_{-1}^{1} (1-t^2)^{nu-1/2} e^{zt} dt.

    With t = sin(theta) the weight becomes cos(theta)^{2 nu}; panels are
    graded geometrically toward theta = +-pi/2 where that factor is not smooth.
    """
    spec = spec or QuadSpec()
    with mp.workprec(64):
        nu_c, z_c = complex(to_cvalue(nu)), complex(to_cvalue(z))
    if nu_c.imag != 0 or not nu_c.real > -0.5:
        raise DomainError("the Poisson integral needs real nu > -1/2")
    nu_r = nu_c.real
    if z_c == 0:
        return _as_mpc(1 + 0j if nu_r == 0 else 0j, ctx)
    half = math.pi / 2

    def integrand(theta):
        return np.cos(theta) ** (2 * nu_r) * np.exp(z_c * np.sin(theta))

    def integrate(panels):
        # uniform on [0, pi/4], then geometric toward pi/2
        levels = 60
        geo = half / 2 * 0.5 ** np.arange(levels + 1)
        inner = np.linspace(0.0, half / 2, panels // 2 + 1)
        d = np.unique(np.concatenate([inner, half - geo, [half]]))
        d = d[d <= half]
        edges = np.concatenate([-d[::-1], d[1:]])
        return _panels(integrand, edges, spec.nodes_per_panel)

    total = _refine(integrate, spec, "Bessel I")
    value = (z_c / 2) ** nu_r / (math.sqrt(math.pi) * special.gamma(nu_r + 0.5)) * total
    return _as_mpc(complex(value), ctx)
