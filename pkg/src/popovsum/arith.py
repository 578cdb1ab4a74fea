"""Exact coefficient tables (r_k(n), tau(n)) and Hecke-class Dirichlet series data.

Tables are built with unbounded Python integers; conversion to working
precision happens only when a series term is evaluated.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import mpmath
import numpy as np
from mpmath import mp, mpc, mpf

from .context import fmt_complex, fmt_real, parse_complex
from .errors import DomainError, TableTooShortError


@dataclass(frozen=True)
class CoeffTable:
    """Exact integer coefficients ``values[0..N]``.

    ``kind`` is ``"rk"`` (with ``k`` set) or ``"tau"``.
    """

    kind: str
    N: int
    values: tuple[int, ...]
    k: int | None = None
    method: str = ""

    def __post_init__(self):
        if len(self.values) != self.N + 1:
            raise ValueError("values must hold N + 1 entries")

    def __getitem__(self, n: int) -> int:
        if n < 0 or n > self.N:
            raise TableTooShortError(f"index {n} outside table 0..{self.N}")
        return self.values[n]

    def __len__(self):
        return len(self.values)


def _truncated_mul(f: Sequence[int], g: Sequence[int], N: int) -> list[int]:
    # loop over the sparser factor; r_1 has only O(sqrt N) nonzero entries
    nz_f = [(i, c) for i, c in enumerate(f[: N + 1]) if c]
    nz_g = [(i, c) for i, c in enumerate(g[: N + 1]) if c]
    if len(nz_f) > len(nz_g):
        nz_f, g = nz_g, f
    out = [0] * (N + 1)
    for i, c in nz_f:
        for j in range(N + 1 - i):
            gj = g[j]
            if gj:
                out[i + j] += c * gj
    return out


def _r1_values(N: int) -> list[int]:
    vals = [0] * (N + 1)
    vals[0] = 1
    m = 1
    while m * m <= N:
        vals[m * m] = 2
        m += 1
    return vals


def r1_table(N: int) -> CoeffTable:
    """r_1(n): 1 at n = 0, 2 at positive squares, 0 elsewhere."""
    if N < 0:
        raise DomainError("N must be non-negative")
    return CoeffTable("rk", N, tuple(_r1_values(N)), k=1, method="squares")


def rk_table(k: int, N: int) -> CoeffTable:
    """r_k(n) for 0 <= n <= N as the k-th power of the theta series.

    Binary exponentiation of the r_1 sequence; every product is truncated at
    index N.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    if N < 0:
        raise DomainError("N must be non-negative")
    base = _r1_values(N)
    result: list[int] | None = None
    e = k
    while e:
        if e & 1:
            result = base if result is None else _truncated_mul(result, base, N)
        e >>= 1
        if e:
            base = _truncated_mul(base, base, N)
    return CoeffTable("rk", N, tuple(result), k=k, method="binary-power convolution")


@lru_cache(maxsize=64)
def _rk_cached(k: int, N: int) -> CoeffTable:
    return rk_table(k, N)


def rk_values(k: int, N: int) -> CoeffTable:
    """Cached table with at least ``N + 1`` entries (sizes rounded up to powers of two)."""
    size = 64
    while size < N:
        size *= 2
    return _rk_cached(k, size)


def rk_array(k: int, N: int) -> np.ndarray:
    """r_k(0..N) as an int64 array, for long tables (N up to ~10**6).

    Uses k - 1 sparse convolutions with r_1 (shift-and-add over the squares),
    which stays exact because every intermediate entry is some r_j(n) bounded
    by (2 sqrt(N) + 1)**k < 2**62.
    """
    if k < 1 or N < 0:
        raise DomainError("need k >= 1 and N >= 0")
    if (2 * math.isqrt(N) + 3) ** k >= 2**62:
        raise OverflowError("int64 table would overflow; use rk_table")
    r1 = np.zeros(N + 1, dtype=np.int64)
    r1[0] = 1
    m = np.arange(1, math.isqrt(N) + 1)
    r1[m * m] = 2
    out = r1.copy()
    for _ in range(k - 1):
        nxt = out.copy()
        for j in range(1, math.isqrt(N) + 1):
            s = j * j
            nxt[s:] += 2 * out[: N + 1 - s]
        out = nxt
    return out


def _euler_product(N: int) -> list[int]:
    # prod (1 - q^n) = sum_j (-1)^j q^{j(3j-1)/2}, j over all integers
    coeffs = [0] * (N + 1)
    j = 0
    while True:
        added = False
        for jj in ((j, -j) if j else (0,)):
            e = jj * (3 * jj - 1) // 2
            if e <= N:
                coeffs[e] += -1 if jj % 2 else 1
                added = True
        if not added:
            break
        j += 1
    return coeffs


def tau_table(N: int) -> CoeffTable:
    """Ramanujan tau(n) for n <= N from q * prod (1 - q^n)^24."""
    if N < 1:
        raise DomainError("N must be >= 1")
    M = N - 1
    e1 = _euler_product(M)
    e2 = _truncated_mul(e1, e1, M)
    e4 = _truncated_mul(e2, e2, M)
    e8 = _truncated_mul(e4, e4, M)
    e16 = _truncated_mul(e8, e8, M)
    e24 = _truncated_mul(e16, e8, M)
    return CoeffTable("tau", N, tuple([0] + e24), method="pentagonal + squaring")


@dataclass(frozen=True)
class Envelope:
    """Growth data that lets the series engine certify Hecke-series tails.

    Asserts |a(n)|, |b(n)| <= prefactor * (3 sqrt n)**k * n**weight and the
    linear spectra lambda_n = lambda_slope * n, mu_n = mu_slope * n.
    """

    k: int
    weight: float
    prefactor: float
    lambda_slope: mpf
    mu_slope: mpf


@dataclass
class HeckeData:
    """A Dirichlet-series pair phi, psi with Gamma(s)phi(s) = Gamma(r-s)psi(r-s).

    Sequences are 1-based in the mathematics and 0-based here:
    ``lam[0]`` is lambda_1.
    """

    lam: list
    a: list
    mu: list
    b: list
    r: mpf
    rho: mpc
    rho_star: mpc
    phi0: mpc
    envelope: Envelope | None = None
    label: str = ""

    def __post_init__(self):
        if not (len(self.lam) == len(self.a) == len(self.mu) == len(self.b)):
            raise ValueError("lambda, a, mu, b must have equal length")
        if self.r <= 0:
            raise DomainError("r must be positive")
        for seq in (self.lam, self.mu):
            if any(v <= 0 for v in seq):
                raise DomainError("spectra must be positive")
            if any(seq[i + 1] <= seq[i] for i in range(len(seq) - 1)):
                raise DomainError("spectra must be strictly increasing")
        if all(c == 0 for c in self.a) or all(c == 0 for c in self.b):
            raise DomainError("coefficient sequences must not vanish identically")
        if self.envelope is not None:
            e = self.envelope
            for i in range(self.n_terms):
                for v, slope in ((self.lam[i], e.lambda_slope), (self.mu[i], e.mu_slope)):
                    if abs(v - slope * (i + 1)) > 1e-12 * abs(v):
                        raise DomainError("envelope requires linear spectra")

    @property
    def n_terms(self) -> int:
        return len(self.lam)

    def check_index(self, n: int):
        if n > self.n_terms:
            raise TableTooShortError(
                f"HeckeData holds {self.n_terms} terms, series needs term {n}")

    def to_json(self) -> str:
        return json.dumps(hecke_to_dict(self))


def hecke_from_rk(k: int, N: int, prec: int | None = None) -> HeckeData:
    """phi(s) = sum r_k(n) (pi n)^{-s}: r = k/2, residues 1/Gamma(k/2), phi(0) = -1."""
    table = rk_table(k, N)
    with mp.workprec(prec or mp.prec):
        lam = [mpmath.pi * n for n in range(1, N + 1)]
        coeffs = [mpf(table[n]) for n in range(1, N + 1)]
        r = mpf(k) / 2
        rho = mpc(1 / mpmath.gamma(r))
        env = Envelope(k=k, weight=0.0, prefactor=1.0, lambda_slope=+mpmath.pi, mu_slope=+mpmath.pi)
        return HeckeData(lam, coeffs, list(lam), list(coeffs), r, rho, rho, mpc(-1),
                         envelope=env, label=f"rk:{k}")


def hecke_from_tau(N: int, prec: int | None = None) -> HeckeData:
    """phi(s) = sum tau(n) (2 pi n)^{-s}: weight r = 12, entire, phi(0) = 0."""
    table = tau_table(N)
    with mp.workprec(prec or mp.prec):
        lam = [2 * mpmath.pi * n for n in range(1, N + 1)]
        coeffs = [mpf(table[n]) for n in range(1, N + 1)]
        # |tau(n)| <= d(n) n^{11/2} <= 2 n^6
        env = Envelope(k=0, weight=6.0, prefactor=2.0, lambda_slope=2 * mpmath.pi,
                       mu_slope=2 * mpmath.pi)
        return HeckeData(lam, coeffs, list(lam), list(coeffs), mpf(12), mpc(0), mpc(0), mpc(0),
                         envelope=env, label="tau")


def hecke_to_dict(h: HeckeData) -> dict:
    prec = max(mp.prec, 64)
    doc = {
        "lambda": [fmt_real(v, prec) for v in h.lam],
        "a": [fmt_complex(v, prec) for v in h.a],
        "mu": [fmt_real(v, prec) for v in h.mu],
        "b": [fmt_complex(v, prec) for v in h.b],
        "r": fmt_real(h.r, prec),
        "rho": fmt_complex(h.rho, prec),
        "rho_star": fmt_complex(h.rho_star, prec),
        "phi0": fmt_complex(h.phi0, prec),
        "n_terms": h.n_terms,
    }
    if h.label:
        doc["label"] = h.label
    if h.envelope is not None:
        e = h.envelope
        doc["envelope"] = {
            "k": e.k, "weight": e.weight, "prefactor": e.prefactor,
            "lambda_slope": fmt_real(e.lambda_slope, prec),
            "mu_slope": fmt_real(e.mu_slope, prec),
        }
    return doc


def _complex_from_json(v) -> mpc:
    if isinstance(v, (list, tuple)):
        return mpc(mpf(v[0]), mpf(v[1]))
    return parse_complex(v)


def hecke_from_dict(doc: dict, prec: int | None = None) -> HeckeData:
    with mp.workprec(prec or max(mp.prec, 64)):
        lam = [mpf(v) for v in doc["lambda"]]
        mu = [mpf(v) for v in doc["mu"]]
        a = [_complex_from_json(v) for v in doc["a"]]
        b = [_complex_from_json(v) for v in doc["b"]]
        if "n_terms" in doc and doc["n_terms"] != len(lam):
            raise ValueError("n_terms does not match the stored arrays")
        env = None
        if "envelope" in doc:
            e = doc["envelope"]
            env = Envelope(int(e["k"]), float(e["weight"]), float(e["prefactor"]),
                           mpf(e["lambda_slope"]), mpf(e["mu_slope"]))
        return HeckeData(lam, a, mu, b, mpf(doc["r"]), _complex_from_json(doc["rho"]),
                         _complex_from_json(doc["rho_star"]), _complex_from_json(doc["phi0"]),
                         envelope=env, label=doc.get("label", ""))


def hecke_from_json(text: str, prec: int | None = None) -> HeckeData:
    return hecke_from_dict(json.loads(text), prec)
