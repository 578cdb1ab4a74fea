"""Working-precision policy and decimal-string conversion helpers.

Complex values are plain :class:`mpmath.mpc` objects; an :class:`EvalContext`
fixes the significand size every operation works at.  All arithmetic runs
inside ``mp.workprec`` blocks so the global mpmath state is never left
modified.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mp, mpc, mpf
from mpmath.libmp import prec_to_dps, to_str

DEFAULT_PRECISION = 128
GUARD_BITS = 20
PREC_ENV_VAR = "PIL_DEFAULT_PREC"


def default_precision() -> int:
    raw = os.environ.get(PREC_ENV_VAR)
    if raw is None:
        return DEFAULT_PRECISION
    prec = int(raw)
    if prec < 53:
        raise ValueError(f"{PREC_ENV_VAR} must be >= 53, got {prec}")
    return prec


@dataclass(frozen=True)
class EvalContext:
    """Precision and series-termination policy for special-function kernels.

    ``term_tol`` defaults to ``2**-(precision + 8)``.
    """

    precision: int = field(default_factory=default_precision)
    term_tol: float | None = None
    max_terms: int = 20000
    quad_panels: int = 32

    def __post_init__(self):
        if self.precision < 53:
            raise ValueError("precision must be at least 53 bits")
        if self.term_tol is None:
            object.__setattr__(self, "term_tol", 2.0 ** -(self.precision + 8))
        if not 0 < self.term_tol < 1:
            raise ValueError("term_tol must lie in (0, 1)")
        if self.max_terms < 16:
            raise ValueError("max_terms must be at least 16")

    @property
    def work_prec(self) -> int:
        return self.precision + GUARD_BITS

    @property
    def pole_tol(self) -> mpf:
        """Distance below which a point counts as sitting on an exceptional point."""
        return mpf(2) ** (-(self.precision // 2))

    def with_precision(self, precision: int) -> "EvalContext":
        return EvalContext(precision=precision, max_terms=self.max_terms, quad_panels=self.quad_panels)


def parse_complex(text: str) -> mpc:
    """Parse ``"re,im"`` or ``"re"`` at the current mpmath precision."""
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) == 1:
        return mpc(mpf(parts[0]), 0)
    if len(parts) == 2:
        return mpc(mpf(parts[0]), mpf(parts[1]))
    raise ValueError(f"cannot parse complex value {text!r}")


def to_cvalue(value) -> mpc:
    """Convert a user-level number (str, int, float, complex, Fraction, mpf, mpc)."""
    if isinstance(value, mpc):
        return +value
    if isinstance(value, str):
        return parse_complex(value)
    if isinstance(value, Fraction):
        return mpc(mpf(value.numerator) / value.denominator)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return mpc(mpf(value[0]), mpf(value[1]))
    return mpc(mpmath.mpmathify(value))


def to_real(value) -> mpf:
    z = to_cvalue(value)
    if z.imag != 0:
        raise ValueError(f"expected a real value, got {value!r}")
    return z.real


def digits_for(prec: int) -> int:
    return prec_to_dps(prec) + 3


def fmt_real(x, prec: int | None = None) -> str:
    """Decimal string carrying enough digits to round-trip ``prec`` bits."""
    prec = prec or mp.prec
    x = mpf(x)
    if not mpmath.isfinite(x):
        return str(x)
    return to_str(x._mpf_, digits_for(prec))


def fmt_complex(z, prec: int | None = None) -> list[str]:
    z = mpc(z)
    return [fmt_real(z.real, prec), fmt_real(z.imag, prec)]


def fmt_float(x) -> str:
    """Short decimal string for bounds and residual magnitudes."""
    x = mpf(x)
    if not mpmath.isfinite(x):
        return str(x)
    return to_str(x._mpf_, 6)


def smallest_normal() -> float:
    return 2.0 ** -1022


def is_near_nonpositive_integer(z: mpc, tol) -> bool:
    if abs(z.imag) >= tol:
        return False
    re = z.real
    if re > tol:
        return False
    return abs(re - mpmath.nint(re)) < tol


def log2_abs(x) -> float:
    x = abs(x)
    if x == 0:
        return -math.inf
    return float(mpmath.log(x, 2))
