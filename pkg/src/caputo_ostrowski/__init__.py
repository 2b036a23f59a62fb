"""Right Caputo fractional calculus and numerical checks of Ostrowski-type bounds."""

__version__ = "0.1.0"

from caputo_ostrowski.errors import DomainError, EvaluationError, HypothesisError
from caputo_ostrowski.functions import (
    FractionalSetup,
    Interval,
    ModelFunction,
    PowerTerm,
    from_callables,
    from_terms,
    make_constant,
    make_power_at_b,
    parse_function_spec,
    sample_corpus,
)
from caputo_ostrowski.inequalities import (
    InequalityReport,
    TheoremId,
    Verdict,
    eval_classical_ostrowski,
    eval_product_theorem,
    eval_z_bound,
    run_campaign,
)
from caputo_ostrowski.operators import (
    FractionalEvaluation,
    caputo_oracle_power,
    caputo_right,
    rl_integral_left,
    rl_integral_right,
    taylor_reconstruct,
)
from caputo_ostrowski.quadrature import QuadResult, norm, regular_integral, singular_integral
from caputo_ostrowski.special import beta, gamma

__all__ = [
    "DomainError",
    "EvaluationError",
    "FractionalEvaluation",
    "FractionalSetup",
    "HypothesisError",
    "InequalityReport",
    "Interval",
    "ModelFunction",
    "PowerTerm",
    "QuadResult",
    "TheoremId",
    "Verdict",
    "beta",
    "caputo_oracle_power",
    "caputo_right",
    "eval_classical_ostrowski",
    "eval_product_theorem",
    "eval_z_bound",
    "from_callables",
    "from_terms",
    "gamma",
    "make_constant",
    "make_power_at_b",
    "norm",
    "parse_function_spec",
    "regular_integral",
    "rl_integral_left",
    "rl_integral_right",
    "run_campaign",
    "sample_corpus",
    "singular_integral",
    "taylor_reconstruct",
]
