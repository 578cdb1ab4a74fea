"""Shared evaluation shortcuts and specialization maps for the identity tests."""

import mpmath
from mpmath import mp, mpc, mpf

from popovsum.context import EvalContext, parse_complex
from popovsum.identities import IdentityParams, eval_identity

PREC = 128


def ev(identity, tol=1e-18, prec=PREC, **kw):
    return eval_identity(IdentityParams(identity, **kw), None, EvalContext(prec), tol)


def cv(s, prec=PREC + 20):
    with mp.workprec(prec):
        return parse_complex(s) if isinstance(s, str) else mpc(s)


def rel(a, b, factor=1):
    """Relative distance between factor * a and b."""
    with mp.workprec(PREC + 40):
        a, b = mpc(factor) * mpc(a), mpc(b)
        return abs(a - b) / max(abs(a), abs(b))


def whittaker_to_bessel_i(k, y):
    """C with WhittakerMain(rho = 0) = C * BesselIPair, both sides."""
    with mp.workprec(PREC + 20):
        y = cv(y)
        return 2 ** (mpf(k) / 2 - mpf(1) / 2) * mpmath.gamma(mpf(k) / 4 + mpf(1) / 2) * mpmath.sqrt(mpmath.pi * y)


def i_power(k):
    """i^nu, nu = k/4 - 1/2: BesselJPair(x, iy) = i^nu BesselIPair(x, y) for real y > 0."""
    with mp.workprec(PREC + 20):
        return mpmath.exp(1j * mpmath.pi / 2 * (mpf(k) / 4 - mpf(1) / 2))


def whittaker_to_laguerre(y):
    """sqrt(2 pi y): WhittakerMain at k = 2 over LaguerreK2."""
    with mp.workprec(PREC + 20):
        return mpmath.sqrt(2 * mpmath.pi * cv(y))


def half_rho_factor(x, y):
    """sqrt((x-y)/(x+y)): HalfRho = WhittakerMain(rho = -1/2) times this."""
    with mp.workprec(PREC + 20):
        x, y = cv(x), cv(y)
        return mpmath.sqrt((x - y) / (x + y))


def popov_hecke_factor(k, x, z):
    """F with PopovHecke(hecke_from_rk(k)) * F = PopovClassical(k), z != 0."""
    with mp.workprec(PREC + 20):
        x, z = cv(x), cv(z)
        nu = mpf(k) / 2 - 1
        return (z ** nu * mpmath.pi ** (mpf(k) / 4 - mpf(1) / 2) * x ** (mpf(k) / 4)
                / (2 ** nu * mpmath.gamma(mpf(k) / 2)))


def mapped(x, y):
    """(x, y) -> (x/(x^2 - y^2), y/(x^2 - y^2)) as decimal strings."""
    with mp.workprec(PREC + 40):
        x, y = cv(x), cv(y)
        s = x * x - y * y
        return _s(x / s), _s(y / s)


def _s(z):
    return f"{mpmath.nstr(z.real, 50)},{mpmath.nstr(z.imag, 50)}"


# acceptance bookkeeping, printed and persisted by conftest at session end
ACCEPTANCE: dict = {}
REPORT_LINES: list = []


def record(criterion: int, title: str, passed: bool, detail: str):
    ACCEPTANCE[criterion] = (title, bool(passed), detail)


def keep(rep, **extra):
    d = rep.to_dict()
    d.pop("wall_ms", None)
    d.update(extra)
    REPORT_LINES.append(d)
    return rep
