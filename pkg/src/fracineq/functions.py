"""Test-function catalog: parsing, derivatives, synchrony, derivative norms.

Spec grammar (no whitespace)::

    pow:<p>              tau**p
    poly:<c0>,<c1>,...   sum c_i tau**i
    exp:<c>              exp(c tau)
    log1p                log(1 + tau)
    affine:<a>,<b>       a + b tau
    const:<c>            c

Factors may be joined with ``*`` (``pow:1*exp:2``) to form a product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, SpecParseError
from .quadrature import QuadratureConfig, integrate_single

MONOTONE = ("increasing", "decreasing", "none", "unknown")
SYNC_GRID = 200
MONOTONE_GRID = 1000
ROOT_GRID = 1000


class MissingDerivativeError(DomainError):
    pass


@dataclass(frozen=True)
class Integrand:
    """A vectorised real function on (0, inf) with catalog metadata.

    ``order_at_zero`` is the exponent of the leading power of tau at 0+,
    used to check integrability against the operator kernel.
    """

    spec: str
    eval: Callable = field(compare=False, repr=False)
    derivative: Callable | None = field(default=None, compare=False, repr=False)
    monotone: str = "unknown"
    order_at_zero: float = 0.0

    def __call__(self, tau):
        return self.eval(np.asarray(tau, dtype=float))

    def __mul__(self, other: Integrand) -> Integrand:
        if not isinstance(other, Integrand):
            return NotImplemented
        return product(self, other)


def product(*fs: Integrand) -> Integrand:
    """Pointwise product; the spec is the ``*``-joined factor specs."""
    if len(fs) == 1:
        return fs[0]
    head, rest = fs[0], product(*fs[1:])

    def ev(t, a=head, b=rest):
        return a(t) * b(t)

    def dv(t, a=head, b=rest):
        t = np.asarray(t, dtype=float)
        return a.derivative(t) * b(t) + a(t) * b.derivative(t)

    has_d = head.derivative is not None and rest.derivative is not None
    return Integrand(f"{head.spec}*{rest.spec}", ev, dv if has_d else None, "unknown",
                     head.order_at_zero + rest.order_at_zero)


def _direction(c: float) -> str:
    if c > 0:
        return "increasing"
    if c < 0:
        return "decreasing"
    return "none"


def _number(token: str, spec: str, pos: int) -> float:
    try:
        v = float(token)
    except ValueError:
        raise SpecParseError(f"expected a number, got {token!r}", spec, pos) from None
    if not math.isfinite(v) or token.strip() != token:
        raise SpecParseError(f"expected a finite number, got {token!r}", spec, pos)
    return v


def _numbers(body: str, spec: str, start: int, count: int | None) -> list[float]:
    out = []
    pos = start
    for tok in body.split(","):
        if tok == "":
            raise SpecParseError("empty number", spec, pos)
        out.append(_number(tok, spec, pos))
        pos += len(tok) + 1
    if count is not None and len(out) != count:
        raise SpecParseError(f"expected {count} number(s), got {len(out)}", spec, start)
    return out


def _poly_monotone(c: np.ndarray) -> str:
    dc = np.polynomial.polynomial.polyder(c)
    dc = np.trim_zeros(dc, "b")
    if dc.size == 0 or not np.any(dc):
        return "none"
    roots = np.polynomial.polynomial.polyroots(dc) if dc.size > 1 else np.array([])
    crossings = [r.real for r in roots
                 if abs(r.imag) <= 1e-12 * max(1.0, abs(r)) and r.real > 0]
    # a sign change needs a positive root of odd multiplicity
    probe = sorted(set(round(r, 12) for r in crossings))
    pts = [0.0, *probe, (probe[-1] if probe else 0.0) + 1.0]
    mids = [(a + b) / 2 for a, b in zip(pts[:-1], pts[1:])]
    signs = {np.sign(np.polynomial.polynomial.polyval(m, dc)) for m in mids}
    signs.discard(0.0)
    if signs == {1.0}:
        return "increasing"
    if signs == {-1.0}:
        return "decreasing"
    return "none" if not signs else "unknown"


def _parse_factor(spec: str, full: str, offset: int) -> Integrand:
    kind, sep, body = spec.partition(":")
    bstart = offset + len(kind) + 1
    if kind == "log1p":
        if sep:
            raise SpecParseError("log1p takes no arguments", full, offset + len(kind))
        return Integrand(spec, np.log1p, lambda t: 1.0 / (1.0 + np.asarray(t, float)),
                         "increasing", 1.0)
    if kind not in ("pow", "poly", "exp", "affine", "const"):
        raise SpecParseError(f"unknown function kind {kind!r}", full, offset)
    if not sep:
        raise SpecParseError(f"{kind} needs ':' and arguments", full, offset + len(kind))
    if kind == "pow":
        (p,) = _numbers(body, full, bstart, 1)
        if p == 0:
            return Integrand(spec, lambda t: np.ones_like(np.asarray(t, float)),
                             lambda t: np.zeros_like(np.asarray(t, float)), "none", 0.0)
        return Integrand(spec, lambda t: np.asarray(t, float) ** p,
                         lambda t: p * np.asarray(t, float) ** (p - 1.0), _direction(p), p)
    if kind == "poly":
        c = np.array(_numbers(body, full, bstart, None))
        dc = np.polynomial.polynomial.polyder(c)
        nz = np.flatnonzero(c)
        order = float(nz[0]) if nz.size else 0.0
        return Integrand(spec,
                         lambda t: np.polynomial.polynomial.polyval(np.asarray(t, float), c),
                         lambda t: np.polynomial.polynomial.polyval(np.asarray(t, float), dc),
                         _poly_monotone(c), order)
    if kind == "exp":
        (k,) = _numbers(body, full, bstart, 1)
        return Integrand(spec, lambda t: np.exp(k * np.asarray(t, float)),
                         lambda t: k * np.exp(k * np.asarray(t, float)), _direction(k), 0.0)
    if kind == "affine":
        a, b = _numbers(body, full, bstart, 2)
        return Integrand(spec, lambda t: a + b * np.asarray(t, float),
                         lambda t: np.full_like(np.asarray(t, float), b), _direction(b),
                         0.0 if a != 0 else 1.0)
    (c0,) = _numbers(body, full, bstart, 1)
    return Integrand(spec, lambda t: np.full_like(np.asarray(t, float), c0),
                     lambda t: np.zeros_like(np.asarray(t, float)), "none", 0.0)


def parse_integrand(spec: str) -> Integrand:
    """Parse a spec string into an `Integrand`.

    >>> f = parse_integrand("pow:2")
    >>> float(f(3.0)), float(f.derivative(3.0)), f.monotone
    (9.0, 6.0, 'increasing')
    """
    if not isinstance(spec, str) or spec == "":
        raise SpecParseError("empty spec", str(spec), 0)
    factors = []
    offset = 0
    for part in spec.split("*"):
        if part == "":
            raise SpecParseError("empty factor", spec, offset)
        factors.append(_parse_factor(part, spec, offset))
        offset += len(part) + 1
    out = product(*factors)
    if len(factors) > 1:
        out = Integrand(spec, out.eval, out.derivative, out.monotone, out.order_at_zero)
    return out


def check_monotone(f: Integrand, x_max: float, n: int = MONOTONE_GRID) -> bool:
    """Spot-check the declared monotonicity of f on n points of (0, x_max]."""
    t = x_max * np.arange(1, n + 1) / n
    d = np.diff(f(t))
    if f.monotone == "increasing":
        return bool(np.all(d >= 0))
    if f.monotone == "decreasing":
        return bool(np.all(d <= 0))
    if f.monotone == "none":
        return bool(np.all(d == 0))
    return True


@dataclass(frozen=True)
class SynchronousPair:
    phi: Integrand
    psi: Integrand
    certified: str
    x_max: float = 1.0

    @property
    def specs(self) -> list[str]:
        return [self.phi.spec, self.psi.spec]


def certify_pair(phi: Integrand, psi: Integrand, x_max: float) -> SynchronousPair:
    """Classify (phi, psi) as synchronous, asynchronous or unknown on (0, x_max].

    Functions with a known monotone direction are classified directly; a
    constant factor makes the pair synchronous. Otherwise the product
    condition (phi(a) - phi(b)) (psi(a) - psi(b)) is checked for every pair
    of a 200-point grid.
    """
    dirs = {phi.monotone, psi.monotone}
    if "none" in dirs:
        return SynchronousPair(phi, psi, "synchronous", x_max)
    if dirs <= {"increasing", "decreasing"}:
        verdict = "synchronous" if len(dirs) == 1 else "asynchronous"
        return SynchronousPair(phi, psi, verdict, x_max)
    t = x_max * np.arange(1, SYNC_GRID + 1) / SYNC_GRID
    with np.errstate(over="ignore", invalid="ignore"):
        a, b = phi(t), psi(t)
        D = (a[:, None] - a[None, :]) * (b[:, None] - b[None, :])
    if not np.all(np.isfinite(D)):
        return SynchronousPair(phi, psi, "unknown", x_max)
    slack = 1e-12 * float(np.max(np.abs(D)))
    if np.all(D >= -slack):
        verdict = "synchronous"
    elif np.all(D <= slack):
        verdict = "asynchronous"
    else:
        verdict = "unknown"
    return SynchronousPair(phi, psi, verdict, x_max)


@dataclass(frozen=True)
class HolderPair:
    s: float
    v: float

    def __post_init__(self):
        if not (self.s > 1 and self.v > 1):
            raise DomainError(f"Holder exponents must exceed 1, got ({self.s}, {self.v})")
        if abs(1.0 / self.s + 1.0 / self.v - 1.0) > 1e-12:
            raise DomainError(f"1/s + 1/v must equal 1, got {1 / self.s + 1 / self.v!r}")

    @classmethod
    def conjugate(cls, s: float) -> HolderPair:
        s = float(s)
        if not s > 1:
            raise DomainError(f"Holder exponent must exceed 1, got {s}")
        return cls(s, s / (s - 1.0))


def _sign_changes(g: Callable, T: float, n: int = ROOT_GRID) -> list[float]:
    t = T * np.arange(1, n + 1) / n
    v = g(t)
    out = [float(a) for a, va in zip(t[:-1], v[:-1]) if va == 0]
    for i in np.flatnonzero(v[:-1] * v[1:] < 0):
        out.append(brentq(lambda u: float(g(np.float64(u))), t[i], t[i + 1], xtol=1e-15 * T))
    return sorted(out)


def lp_norm_derivative(f: Integrand, p: float, T: float,
                       cfg: QuadratureConfig | None = None) -> float:
    """(integral over (0, T) of |f'|**p)**(1/p).

    |f'|**p has a kink wherever f' changes sign, so (0, T) is cut at those
    points and each half-piece is integrated with the grading at its cut end.
    """
    if f.derivative is None:
        raise MissingDerivativeError(f"no derivative available for {f.spec!r}")
    if not p >= 1:
        raise DomainError(f"p must be >= 1, got {p}")
    if not T > 0:
        raise DomainError(f"T must be > 0, got {T}")
    d = f.derivative
    cuts = [0.0, *_sign_changes(d, T), float(T)]
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        m = 0.5 * (a + b)
        for end, h in ((a, m - a), (b, m - b)):
            res = integrate_single(1.0, 0.0, lambda t: np.abs(d(end + h * t)) ** p, cfg)
            total += abs(h) * res.value
    return total ** (1.0 / p)
