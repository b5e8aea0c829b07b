"""Generalized Katugampola fractional integrals and Chebyshev-type inequality checks."""

from .errors import (DomainError, FracIneqError, QuadratureError, QuadratureWarning,
                     RangeOverflowError, SpecParseError)
from .functions import (HolderPair, Integrand, SynchronousPair, certify_pair, lp_norm_derivative,
                        parse_integrand)
from .operator import (OperatorEvaluator, ReductionKind, katugampola_integral,
                       power_closed_form, reduce)
from .quadrature import (JacobiRule, QuadratureConfig, QuadResult, integrate_double,
                         integrate_single, jacobi_rule)
from .special import FractionalParams, beta_fn, gamma, lambda_fn

__version__ = "0.1.0"

__all__ = [
    "DomainError", "FracIneqError", "QuadratureError", "QuadratureWarning", "RangeOverflowError",
    "SpecParseError", "HolderPair", "Integrand", "SynchronousPair", "certify_pair",
    "lp_norm_derivative", "parse_integrand", "OperatorEvaluator", "ReductionKind",
    "katugampola_integral", "power_closed_form", "reduce", "JacobiRule", "QuadratureConfig",
    "QuadResult", "integrate_double", "integrate_single", "jacobi_rule", "FractionalParams",
    "beta_fn", "gamma", "lambda_fn",
]
