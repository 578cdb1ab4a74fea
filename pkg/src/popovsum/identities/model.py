"""Identity tags, parameter points, per-side evaluation plans and reports."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from typing import Any, Callable

from mpmath import mpc

from ..arith import HeckeData
from ..context import fmt_complex, fmt_float
from ..series import Majorant, SeriesResult, TruncationPolicy, sum_series


class IdentityId(str, enum.Enum):
    POPOV_CLASSICAL = "popov-classical"
    THETA_JACOBI = "theta-jacobi"
    THETA_K = "theta-k"
    RIESZ_CN = "riesz-cn"
    BESSEL_J_PAIR = "bessel-j-pair"
    BESSEL_I_PAIR = "bessel-i-pair"
    K4_CURIOUS = "k4-curious"
    K1_J = "k1-j"
    K1_I = "k1-i"
    WHITTAKER_MAIN = "whittaker-main"
    POPOV_HECKE = "popov-hecke"
    WHITTAKER_HECKE = "whittaker-hecke"
    BOCHNER_HECKE = "bochner-hecke"
    HECKE_J = "hecke-j"
    HECKE_I = "hecke-i"
    TAU_WHITTAKER = "tau-whittaker"
    LAGUERRE_K2 = "laguerre-k2"
    HALF_RHO = "half-rho"


PARAM_FIELDS = ("k", "hecke", "x", "y", "z", "rho", "q", "variant")


@dataclass(frozen=True)
class IdentityParams:
    """A concrete parameter point.

    Numeric fields accept anything :func:`popovsum.context.to_cvalue` does
    (decimal strings ``"re,im"`` keep full precision).  ``rho`` doubles as
    mu for the Hecke and tau formulas.  For ``riesz-cn`` an ``int`` or a
    :class:`fractions.Fraction` x with denominator 1 counts as an exact
    integer.
    """

    id: IdentityId
    k: int | None = None
    hecke: HeckeData | None = None
    x: Any = None
    y: Any = None
    z: Any = None
    rho: Any = None
    q: Any = None
    variant: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "id", IdentityId(self.id))

    def present(self) -> set[str]:
        return {f for f in PARAM_FIELDS if getattr(self, f) is not None}

    def describe(self) -> dict:
        out = {"identity": self.id.value}
        for f in PARAM_FIELDS:
            v = getattr(self, f)
            if v is None:
                continue
            if f == "hecke":
                out[f] = v.label or f"hecke[{v.n_terms}]"
            elif isinstance(v, Fraction):
                out[f] = str(v)
            elif isinstance(v, (int, str)):
                out[f] = v
            else:
                out[f] = fmt_complex(mpc(v), 64) if not isinstance(v, (list, tuple)) else list(v)
        return out


@dataclass
class SeriesSpec:
    """One infinite series on one side: terms, majorant, decay margin."""

    term: Callable[[int], mpc]
    majorant: Majorant | None = None
    delta: Any = None
    start: int = 1

    def run(self, policy: TruncationPolicy, scale=0) -> SeriesResult:
        if self.majorant is not None:
            policy = replace(policy, decay_margin=float(self.delta))
        return sum_series(self.term, policy, self.majorant, start=self.start, scale=scale)


@dataclass
class Side:
    """poly + mult * series."""

    poly: mpc
    mult: mpc = field(default_factory=lambda: mpc(1))
    series: SeriesSpec | None = None


@dataclass
class EvalReport:
    identity: str
    params: dict
    domain_ok: bool
    precision_bits: int
    lhs: mpc | None = None
    rhs: mpc | None = None
    abs_residual: Any = None
    rel_residual: Any = None
    lhs_terms: int = 0
    rhs_terms: int = 0
    lhs_tail: Any = 0
    rhs_tail: Any = 0
    lhs_certified: bool = True
    rhs_certified: bool = True
    tol: float | None = None
    passed: bool = False
    status: str = "ok"
    error: str | None = None
    wall_ms: float = 0.0

    def to_dict(self) -> dict:
        prec = self.precision_bits
        d = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name in ("lhs", "rhs"):
                v = None if v is None else fmt_complex(v, prec)
            elif f.name in ("abs_residual", "rel_residual", "lhs_tail", "rhs_tail"):
                v = None if v is None else fmt_float(v)
            elif f.name == "tol":
                v = None if v is None else fmt_float(v)
            elif f.name == "wall_ms":
                v = round(float(v), 3)
            d[f.name] = v
        return d
