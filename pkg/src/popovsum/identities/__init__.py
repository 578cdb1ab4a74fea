"""Registry of summation formulas and their evaluator."""

from .evaluate import (DEFAULT_TOL, default_tol, domain_check, eval_identity, safe_eval, sweep,
                       tail_audit)
from .formulas import REGISTRY, IdentityDef, check_arity
from .model import EvalReport, IdentityId, IdentityParams, SeriesSpec, Side
from .riesz import CN_TERM_CAP, CN_TOL_TIER, RieszBesselSeries, default_q, riesz_lhs

__all__ = [
    "CN_TERM_CAP", "CN_TOL_TIER", "DEFAULT_TOL", "REGISTRY", "EvalReport", "IdentityDef",
    "IdentityId", "IdentityParams", "RieszBesselSeries", "SeriesSpec", "Side", "check_arity",
    "default_q", "default_tol", "domain_check", "eval_identity", "riesz_lhs", "safe_eval", "sweep",
    "tail_audit",
]
