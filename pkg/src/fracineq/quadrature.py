"""Gauss-Jacobi rules on [0, 1] and integration against t**eta (1-t)**(alpha-1).

`jacobi_rule` builds the classical n-point rule. The integrators do not use a
single rule on the whole interval: the factor being integrated is usually
``phi(x * t**(1/rho))``, which is not smooth at t = 0 unless 1/rho is an
integer, and one global rule then converges only algebraically. Instead a
composite rule is used: the endpoint singularity at t = 1 is absorbed by a
Jacobi panel on [1/2, 1], and [0, 1/2] is graded geometrically towards 0 with
a Jacobi panel carrying t**eta at the bottom. Each panel holds ``n`` points,
and ``n`` is doubled until successive values agree.

Double integrals use the tensor product of two composite rules. With
``diagonal_split`` the panels that straddle t = u are replaced by two
triangles, each mapped to the unit square by u = c + (t - c) s (or the
mirror image), so a kink such as |t - u| is never sampled across.
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import DomainError, QuadratureError, QuadratureWarning
from .special import betaln

GRADING_RATIO = 0.15
SPLIT_POINT = 0.5
MAX_LEVELS = 40
# Largest tensor grid (points per axis squared) integrate_double will form.
MAX_GRID = 12_000_000

ENV_TOL = "FRACINEQ_QUAD_TOL"


@dataclass(frozen=True)
class QuadratureConfig:
    n_start: int = 16
    n_max: int = 4096
    rel_tol: float = 1e-10

    def __post_init__(self):
        if self.n_start < 2:
            raise DomainError(f"n_start must be >= 2, got {self.n_start}")
        if self.n_max < self.n_start:
            raise DomainError(f"n_max ({self.n_max}) must be >= n_start ({self.n_start})")
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be > 0, got {self.rel_tol}")

    @classmethod
    def from_env(cls, **overrides) -> QuadratureConfig:
        """Default config, with rel_tol taken from FRACINEQ_QUAD_TOL if set."""
        raw = os.environ.get(ENV_TOL)
        if raw and "rel_tol" not in overrides:
            try:
                overrides["rel_tol"] = float(raw)
            except ValueError:
                raise DomainError(f"{ENV_TOL} is not a number: {raw!r}") from None
        return cls(**overrides)


@dataclass(frozen=True)
class QuadResult:
    value: float
    n_used: int
    est_err: float
    converged: bool
    n_points: int = 0

    def __iter__(self):
        # allows ``value, n_used, est_err = integrate_single(...)``
        return iter((self.value, self.n_used, self.est_err))


@dataclass(frozen=True)
class JacobiRule:
    """n-point Gauss rule for the weight t**eta (1-t)**(alpha-1) on (0, 1)."""

    alpha: float
    eta: float
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.nodes)

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        return float(self.weights @ f(self.nodes))


def _check_exponents(alpha, eta):
    if not alpha > 0:
        raise DomainError(f"alpha must be > 0, got {alpha}")
    if not eta > -1:
        raise DomainError(f"eta must be > -1, got {eta}")


def _recurrence(alpha: float, eta: float, n: int):
    """Jacobi-matrix entries for the weight t**eta (1-t)**(alpha-1) on [0, 1].

    Built from the monic Jacobi recurrence on [-1, 1] with a = alpha - 1 on
    (1-x) and b = eta on (1+x), then mapped by t = (1 + x) / 2.
    """
    a, b = alpha - 1.0, eta
    ab = a + b
    k = np.arange(n, dtype=float)
    diag = np.empty(n)
    diag[0] = (b - a) / (ab + 2.0)
    if n > 1:
        s = 2.0 * k[1:] + ab
        diag[1:] = (b * b - a * a) / (s * (s + 2.0))
    off2 = np.empty(max(n - 1, 0))
    if n > 1:
        off2[0] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) ** 2 * (3.0 + ab))
    if n > 2:
        j = k[2:]
        s = 2.0 * j + ab
        off2[1:] = 4.0 * j * (j + a) * (j + b) * (j + ab) / (s * s * (s * s - 1.0))
    return (1.0 + diag) / 2.0, np.sqrt(off2) / 2.0


def _orthonormal_sweep(t, diag, off, mu0):
    """Sum of squared orthonormal polynomials p_0..p_{n-1} at t, and the
    monic-scaled degree-n polynomial with its derivative (for Newton)."""
    n = len(diag)
    p_prev = np.zeros_like(t)
    p = np.full_like(t, 1.0 / math.sqrt(mu0))
    dp_prev = np.zeros_like(t)
    dp = np.zeros_like(t)
    sumsq = p * p
    for k in range(n - 1):
        b_k = off[k - 1] if k > 0 else 0.0
        p_next = ((t - diag[k]) * p - b_k * p_prev) / off[k]
        dp_next = (p + (t - diag[k]) * dp - b_k * dp_prev) / off[k]
        p_prev, p, dp_prev, dp = p, p_next, dp, dp_next
        sumsq += p * p
    b_last = off[n - 2] if n > 1 else 0.0
    q = (t - diag[n - 1]) * p - b_last * p_prev
    dq = p + (t - diag[n - 1]) * dp - b_last * dp_prev
    return sumsq, q, dq


@lru_cache(maxsize=512)
def _jacobi_arrays(alpha: float, eta: float, n: int):
    diag, off = _recurrence(alpha, eta, n)
    if n == 1:
        nodes = diag.copy()
    else:
        nodes = eigh_tridiagonal(diag, off, eigvals_only=True)
    mu0 = math.exp(betaln(eta + 1.0, alpha))
    # Newton polish; eigenvalues are accurate in absolute terms only
    for _ in range(3):
        _, q, dq = _orthonormal_sweep(nodes, diag, off, mu0)
        step = np.where(dq != 0, q / np.where(dq != 0, dq, 1.0), 0.0)
        trial = nodes - step
        ok = (trial > 0) & (trial < 1) & np.isfinite(trial)
        nodes = np.where(ok, trial, nodes)
    sumsq, q, dq = _orthonormal_sweep(nodes, diag, off, mu0)
    gaps = np.diff(np.concatenate(([0.0], nodes, [1.0])))
    resid = np.abs(q / np.where(dq != 0, dq, np.inf))
    spacing = np.minimum(gaps[:-1], gaps[1:])
    bad = np.flatnonzero(~np.isfinite(nodes) | (resid > 1e-6 * spacing))
    if bad.size:
        i = int(bad[0])
        raise QuadratureError(
            f"Gauss-Jacobi node {i} of {n} (alpha={alpha}, eta={eta}) did not converge; "
            f"residual {resid[i]:.3g}")
    if np.any(np.diff(nodes) <= 0) or nodes[0] <= 0 or nodes[-1] >= 1:
        raise QuadratureError(f"Gauss-Jacobi nodes not strictly inside (0, 1) for n={n}")
    weights = 1.0 / sumsq
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def jacobi_rule(alpha: float, eta: float, n: int) -> JacobiRule:
    """Gauss-Jacobi rule for the weight t**eta (1-t)**(alpha-1) on (0, 1).

    Nodes are eigenvalues of the symmetric tridiagonal Jacobi matrix
    (Golub-Welsch), refined by Newton steps on the degree-n orthogonal
    polynomial. Weights are the Christoffel numbers 1 / sum_k p_k(t_i)**2
    over the orthonormal polynomials, which keeps small weights accurate to
    full relative precision.

    Args:
        alpha: exponent plus one on (1 - t); must be > 0.
        eta: exponent on t; must be > -1.
        n: number of points, >= 2 (1 is accepted internally).

    Raises:
        DomainError: invalid exponents or n.
        QuadratureError: Newton refinement failed for some node.
    """
    alpha, eta = float(alpha), float(eta)
    _check_exponents(alpha, eta)
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    nodes, weights = _jacobi_arrays(alpha, eta, int(n))
    return JacobiRule(alpha, eta, nodes, weights)


@dataclass(frozen=True)
class CompositeRule:
    """Graded composite rule; ``weights`` already contain the full weight."""

    nodes: np.ndarray
    weights: np.ndarray
    panel: np.ndarray
    breaks: tuple


def _breakpoints(n: int) -> tuple:
    # depth grows with n so that doubling also refines the approach to 0
    levels = min(12 + n // 4, MAX_LEVELS)
    inner = [SPLIT_POINT * GRADING_RATIO ** j for j in range(levels, -1, -1)]
    return (0.0, *inner, 1.0)


def _weight_fn(t, alpha, eta):
    return t ** eta * (1.0 - t) ** (alpha - 1.0)


@lru_cache(maxsize=256)
def composite_rule(alpha: float, eta: float, n: int) -> CompositeRule:
    breaks = _breakpoints(n)
    npan = len(breaks) - 1
    nodes, weights = [], []
    # bottom panel [0, e]: t**eta carried by the rule
    e = breaks[1]
    r = jacobi_rule(1.0, eta, n)
    t = e * r.nodes
    nodes.append(t)
    weights.append(e ** (eta + 1.0) * r.weights * (1.0 - t) ** (alpha - 1.0))
    gl = jacobi_rule(1.0, 0.0, n)
    for c, d in zip(breaks[1:-2], breaks[2:-1]):
        t = c + (d - c) * gl.nodes
        nodes.append(t)
        weights.append((d - c) * gl.weights * _weight_fn(t, alpha, eta))
    # top panel [1/2, 1]: (1-t)**(alpha-1) carried by the rule
    c = breaks[-2]
    r = jacobi_rule(alpha, 0.0, n)
    t = c + (1.0 - c) * r.nodes
    nodes.append(t)
    weights.append((1.0 - c) ** alpha * r.weights * t ** eta)
    panel = np.repeat(np.arange(npan), n)
    out = CompositeRule(np.concatenate(nodes), np.concatenate(weights), panel, breaks)
    for a in (out.nodes, out.weights, out.panel):
        a.setflags(write=False)
    return out


def _converged(val, prev, mag, rel_tol):
    diff = abs(val - prev)
    return diff, diff <= rel_tol * max(abs(val), mag)


def _sizes(cfg: QuadratureConfig):
    n = cfg.n_start
    while n <= cfg.n_max:
        yield n
        n *= 2


def integrate_single(alpha: float, eta: float, f: Callable[[np.ndarray], np.ndarray],
                     cfg: QuadratureConfig | None = None) -> QuadResult:
    """Integrate t**eta (1-t)**(alpha-1) f(t) over (0, 1).

    ``f`` must accept a numpy array of points in the open interval. The
    points per panel double from ``cfg.n_start`` until two successive values
    differ by at most ``rel_tol * max(|value|, sum |w f|)``; the last value
    is returned with ``converged=False`` and a `QuadratureWarning` if
    ``n_max`` is reached first.
    """
    cfg = cfg or QuadratureConfig.from_env()
    _check_exponents(alpha, eta)
    prev = None
    diff = math.inf
    for n in _sizes(cfg):
        rule = composite_rule(float(alpha), float(eta), n)
        fv = np.asarray(f(rule.nodes), dtype=float)
        val = float(rule.weights @ fv)
        if not math.isfinite(val):
            return QuadResult(val, n, math.inf, False, rule.nodes.size)
        if prev is not None:
            mag = float(rule.weights @ np.abs(fv))
            diff, ok = _converged(val, prev, mag, cfg.rel_tol)
            if ok:
                return QuadResult(val, n, diff, True, rule.nodes.size)
        prev = val
    warnings.warn(f"integrate_single: no convergence by n={n} (last difference {diff:.3g})",
                  QuadratureWarning, stacklevel=2)
    return QuadResult(prev, n, diff, False, rule.nodes.size)


def _duffy_square(g, w1, w2, c, d, kind, e1, e2, n):
    """Integral over the panel square [c, d]**2 split along the diagonal.

    w1(t), w2(u) are the smooth parts of the weights on this panel; the
    singular parts (t**e1 u**e2 on the bottom panel, (1-t)**e1 (1-u)**e2 on
    the top panel) are handled by Jacobi rules after the triangle map.
    Returns (value, abs_value).
    """
    total = 0.0
    mag = 0.0
    if kind == "middle":
        gl = jacobi_rule(1.0, 0.0, n)
        h = d - c
        x = c + h * gl.nodes[:, None]
        s = gl.nodes[None, :]
        ww = h * gl.weights[:, None] * gl.weights[None, :]
        y = c + (x - c) * s
        for t, u in ((x, y), (y, x)):
            vals = ww * (x - c) * w1(t) * w2(u) * g(t, u)
            total += vals.sum()
            mag += np.abs(vals).sum()
    elif kind == "bottom":
        # u = t s (t > u) or t = u s (u > t); weight t**e1 u**e2
        r = jacobi_rule(1.0, e1 + e2 + 1.0, n)
        x = d * r.nodes[:, None]
        scale = d ** (e1 + e2 + 2.0)
        for other_exp, swap in ((e2, False), (e1, True)):
            rs = jacobi_rule(1.0, other_exp, n)
            y = x * rs.nodes[None, :]
            ww = scale * r.weights[:, None] * rs.weights[None, :]
            t, u = (y, x) if swap else (x, y)
            vals = ww * w1(t) * w2(u) * g(t, u)
            total += vals.sum()
            mag += np.abs(vals).sum()
    else:
        # top: T = 1 - t, U = 1 - u on (0, 1 - c); weight T**e1 U**e2
        h = 1.0 - c
        r = jacobi_rule(1.0, e1 + e2 + 1.0, n)
        big = h * r.nodes[:, None]
        scale = h ** (e1 + e2 + 2.0)
        for other_exp, swap in ((e2, False), (e1, True)):
            rs = jacobi_rule(1.0, other_exp, n)
            small = big * rs.nodes[None, :]
            ww = scale * r.weights[:, None] * rs.weights[None, :]
            tt, uu = (small, big) if swap else (big, small)
            t, u = 1.0 - tt, 1.0 - uu
            vals = ww * w1(t) * w2(u) * g(t, u)
            total += vals.sum()
            mag += np.abs(vals).sum()
    return total, mag


def _double_at(alpha1, eta1, alpha2, eta2, g, n, diagonal_split):
    r1 = composite_rule(alpha1, eta1, n)
    r2 = composite_rule(alpha2, eta2, n)
    G = np.asarray(g(r1.nodes[:, None], r2.nodes[None, :]), dtype=float)
    G = np.broadcast_to(G, (r1.nodes.size, r2.nodes.size))
    W = r1.weights[:, None] * r2.weights[None, :]
    if not diagonal_split:
        vals = W * G
        return float(vals.sum()), float(np.abs(vals).sum()), r1.nodes.size
    off = r1.panel[:, None] != r2.panel[None, :]
    vals = np.where(off, W * G, 0.0)
    total = float(vals.sum())
    mag = float(np.abs(vals).sum())
    breaks = r1.breaks
    npan = len(breaks) - 1
    for p in range(npan):
        c, d = breaks[p], breaks[p + 1]
        if p == 0:
            v, m = _duffy_square(
                g, lambda t: (1.0 - t) ** (alpha1 - 1.0), lambda u: (1.0 - u) ** (alpha2 - 1.0),
                c, d, "bottom", eta1, eta2, n)
        elif p == npan - 1:
            v, m = _duffy_square(
                g, lambda t: t ** eta1, lambda u: u ** eta2,
                c, d, "top", alpha1 - 1.0, alpha2 - 1.0, n)
        else:
            v, m = _duffy_square(
                g, lambda t: _weight_fn(t, alpha1, eta1), lambda u: _weight_fn(u, alpha2, eta2),
                c, d, "middle", 0.0, 0.0, n)
        total += float(v)
        mag += float(m)
    return total, mag, r1.nodes.size


def integrate_double(rule1: tuple, rule2: tuple, g: Callable, cfg: QuadratureConfig | None = None,
                     diagonal_split: bool = False) -> QuadResult:
    """Integrate w1(t) w2(u) g(t, u) over (0, 1)**2.

    ``rule1 = (alpha, eta)`` and ``rule2 = (delta, eta2)`` give the weights
    w(t) = t**eta (1-t)**(alpha-1). ``g`` is called with broadcastable numpy
    arrays (a column of t values against a row of u values, or two arrays of
    equal shape) and must return their broadcast shape.

    With ``diagonal_split`` the integrand may have a kink along t = u.
    Doubling stops early, with ``converged=False``, if the tensor grid would
    exceed MAX_GRID points.
    """
    cfg = cfg or QuadratureConfig.from_env()
    a1, e1 = map(float, rule1)
    a2, e2 = map(float, rule2)
    _check_exponents(a1, e1)
    _check_exponents(a2, e2)
    prev = None
    diff = math.inf
    n = cfg.n_start
    npts = 0
    for n in _sizes(cfg):
        size = n * (len(_breakpoints(n)) - 1)
        if size * size > MAX_GRID:
            break
        val, mag, npts = _double_at(a1, e1, a2, e2, g, n, diagonal_split)
        if not math.isfinite(val):
            return QuadResult(val, n, math.inf, False, npts)
        if prev is not None:
            diff, ok = _converged(val, prev, mag, cfg.rel_tol)
            if ok:
                return QuadResult(val, n, diff, True, npts)
        prev = val
    warnings.warn(f"integrate_double: no convergence by n={n} (last difference {diff:.3g})",
                  QuadratureWarning, stacklevel=2)
    return QuadResult(prev if prev is not None else math.nan, n, diff, False, npts)
