"""Gamma, Beta, the normalisation Lambda and the operator parameter tuple."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, RangeOverflowError

# Gamma overflows double precision just above this point.
GAMMA_MAX_ARG = 171.6
_LOG_DBL_MAX = math.log(1.7976931348623157e308)


@dataclass(frozen=True)
class FractionalParams:
    """Parameters (alpha, beta, rho, k, eta) of the left-sided operator.

    A second set of orders (delta, lambda) is just another instance sharing
    rho, k and eta with the first.
    """

    alpha: float
    beta: float = 0.0
    rho: float = 1.0
    k: float = 0.0
    eta: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "rho", "k", "eta"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, float(v))
        if self.alpha <= 0:
            raise DomainError(f"alpha must be > 0, got {self.alpha}")
        if self.rho <= 0:
            raise DomainError(f"rho must be > 0, got {self.rho}")
        # t**eta must be integrable at 0
        if self.eta <= -1:
            raise DomainError(f"eta must be > -1, got {self.eta}")

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "rho": self.rho,
                "k": self.k, "eta": self.eta}

    def shares_kernel_with(self, other: FractionalParams) -> bool:
        return (self.rho, self.k, self.eta) == (other.rho, other.k, other.eta)


def check_point(x: float) -> float:
    x = float(x)
    if not (math.isfinite(x) and x > 0):
        raise DomainError(f"evaluation point x must be > 0, got {x!r}")
    return x


def gammaln(z: float) -> float:
    """log Gamma(z) for z > 0."""
    if not z > 0:
        raise DomainError(f"gamma is only supported for z > 0, got {z!r}")
    return math.lgamma(z)


def gamma(z: float) -> float:
    """Gamma(z) for 0 < z <= 171.6.

    Raises:
        DomainError: z <= 0.
        RangeOverflowError: z > 171.6.
    """
    if not z > 0:
        raise DomainError(f"gamma is only supported for z > 0, got {z!r}")
    if z > GAMMA_MAX_ARG:
        raise RangeOverflowError(f"gamma({z}) overflows double precision")
    return math.gamma(z)


def betaln(a: float, b: float) -> float:
    if not (a > 0 and b > 0):
        raise DomainError(f"beta needs a > 0 and b > 0, got ({a!r}, {b!r})")
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def beta_fn(a: float, b: float) -> float:
    """Euler Beta B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), via log-gamma."""
    return _safe_exp(betaln(a, b), "beta")


def _safe_exp(logv: float, what: str) -> float:
    if logv > _LOG_DBL_MAX:
        raise RangeOverflowError(f"{what} overflows double precision (log value {logv:.6g})")
    return math.exp(logv)


def log_kernel_prefactor(p: FractionalParams, x: float) -> float:
    """log of rho**-beta * x**(k + rho*(eta + alpha)) / Gamma(alpha).

    This is the constant in front of the unit-interval form of the operator.
    """
    return (-p.beta * math.log(p.rho) + (p.k + p.rho * (p.eta + p.alpha)) * math.log(x)
            - math.lgamma(p.alpha))


def lambda_fn(p: FractionalParams, x: float) -> float:
    """Lambda = Gamma(eta+1)/Gamma(eta+alpha+1) * rho**-beta * x**(k+rho*(eta+alpha)).

    Equal to the operator applied to the constant function 1.
    """
    x = check_point(x)
    logv = (math.lgamma(p.eta + 1.0) - math.lgamma(p.eta + p.alpha + 1.0)
            - p.beta * math.log(p.rho) + (p.k + p.rho * (p.eta + p.alpha)) * math.log(x))
    return _safe_exp(logv, "lambda_fn")
