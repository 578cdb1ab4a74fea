"""Numerical verification of modular summation formulas built on r_k(n) and tau(n)."""

from .context import EvalContext
from .errors import (ConvergenceError, DomainError, ParamError, PoleError, PopovSumError,
                     TableTooShortError)
from .identities import IdentityId, IdentityParams, domain_check, eval_identity, sweep
from .series import TruncationPolicy

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError", "DomainError", "EvalContext", "IdentityId", "IdentityParams", "ParamError",
    "PoleError", "PopovSumError", "TableTooShortError", "TruncationPolicy", "domain_check",
    "eval_identity", "sweep",
]
