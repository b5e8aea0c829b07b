"""Gaps, identity residuals and bound chains for the Chebyshev-type inequalities.

Every check returns an `InequalityReport`. One-sided statements carry a
``gap`` (LHS - RHS); two-step bounds carry a ``chain`` that must be
non-decreasing. The verdict tolerance is ``rel * max(1, scale)`` where
``scale`` is the largest magnitude among the products that enter the
statement and ``rel`` defaults to 1e-8.

Notation used in operand names: ``I(f*g)`` is the operator applied to the
pointwise product of the named roles, ``I1``/``I2`` distinguish the
(alpha, beta) and (delta, lambda) operators, ``Lambda`` is the operator on 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .functions import HolderPair, Integrand, SynchronousPair, lp_norm_derivative, product
from .operator import OperatorEvaluator
from .quadrature import QuadratureConfig, integrate_double, integrate_single
from .special import FractionalParams, check_point, lambda_fn

THEOREM_IDS = ("T3.1", "T3.2", "L4.1", "T4.2", "L4.3", "T4.4", "L5.1-identity",
               "T5.2", "T5.3", "classical-T", "classical-T4", "remark-RL")
DEFAULT_REL_TOL = 1e-8
WEIGHT_GRID = 200


def render(v):
    """Round a real to 15 significant digits for reports; non-finite -> None."""
    if v is None:
        return None
    v = float(v)
    if not math.isfinite(v):
        return None
    return float(f"{v:.15g}")


@dataclass
class InequalityReport:
    theorem_id: str
    params: dict
    x: float
    functions: list
    operands: dict
    gap: float | None = None
    chain: list | None = None
    tol: float = 0.0
    verdict: str = "indeterminate"
    converged: bool = True
    reason: str | None = None

    def to_dict(self) -> dict:
        d = {
            "theorem_id": self.theorem_id,
            "params": {k: render(v) for k, v in self.params.items()},
            "x": render(self.x),
            "functions": list(self.functions),
            "operands": {k: render(v) for k, v in self.operands.items()},
        }
        if self.chain is not None:
            d["chain"] = [render(v) for v in self.chain]
        else:
            d["gap"] = render(self.gap)
        d["tol"] = render(self.tol)
        d["verdict"] = self.verdict
        d["converged"] = self.converged
        d["reason"] = self.reason
        return d

    def sort_key(self) -> tuple:
        order = ("alpha", "beta", "delta", "lambda", "rho", "k", "eta")
        pk = tuple(self.params.get(n, -math.inf) for n in order)
        return (self.theorem_id, pk, self.x, tuple(self.functions),
                tuple(sorted(self.operands.items())))


class IdentityResult(NamedTuple):
    lhs: float
    rhs: float
    residual: float


class Verifier:
    """Shared caches for operator values, norms and double integrals.

    A sweep creates one of these and threads it through every check so that
    an operand needed by several theorems is computed once.
    """

    def __init__(self, cfg: QuadratureConfig | None = None, rel_tol: float = DEFAULT_REL_TOL):
        self.cfg = cfg or QuadratureConfig.from_env()
        self.rel_tol = rel_tol
        self.ev = OperatorEvaluator(self.cfg)
        self._double: dict = {}
        self._norm: dict = {}
        self._sign: dict = {}

    def norm(self, f: Integrand, p: float, T: float):
        key = (f.spec, p, T)
        if key not in self._norm:
            self._norm[key] = lp_norm_derivative(f, p, T, self.cfg)
        return self._norm[key]

    def nonnegative(self, f: Integrand, x: float, strict: bool = False) -> bool:
        key = (f.spec, x, strict)
        if key not in self._sign:
            vals = f(x * np.arange(1, WEIGHT_GRID + 1) / WEIGHT_GRID)
            self._sign[key] = bool(np.all(vals > 0) if strict else np.all(vals >= 0))
        return self._sign[key]

    def abs_kernel(self, p1: FractionalParams, p2: FractionalParams, h: Integrand, x: float):
        """Unit-square integral of w1(t) w2(u) h(tau) h(gamma) |tau - gamma|."""
        key = ("abs", p1.alpha, p2.alpha, p1.eta, p1.rho, x, h.spec)
        if key not in self._double:
            m = self.ev.kernel_map(p1, x)

            def g(t, u):
                a, b = m(t), m(u)
                return h(a) * h(b) * np.abs(a - b)

            self._double[key] = integrate_double((p1.alpha, p1.eta), (p2.alpha, p2.eta), g,
                                                 self.cfg, diagonal_split=True)
        return self._double[key]

    def h_kernel(self, p: FractionalParams, h: Integrand, phi: Integrand, psi: Integrand,
                 x: float):
        """Unit-square integral of w(t) w(u) h(tau) h(gamma) H(tau, gamma)."""
        key = ("H", p.alpha, p.eta, p.rho, x, h.spec, phi.spec, psi.spec)
        if key not in self._double:
            m = self.ev.kernel_map(p, x)

            def g(t, u):
                a, b = m(t), m(u)
                return h(a) * h(b) * (phi(a) - phi(b)) * (psi(a) - psi(b))

            self._double[key] = integrate_double((p.alpha, p.eta), (p.alpha, p.eta), g,
                                                 self.cfg, diagonal_split=False)
        return self._double[key]


_DEFAULT: Verifier | None = None


def _ctx(ctx: Verifier | None) -> Verifier:
    global _DEFAULT
    if ctx is not None:
        return ctx
    if _DEFAULT is None:
        _DEFAULT = Verifier()
    return _DEFAULT


@dataclass
class _Assembly:
    """Collects named operator values and their convergence."""

    ctx: Verifier
    x: float
    roles: dict
    operands: dict = field(default_factory=dict)
    converged: bool = True

    def I(self, p: FractionalParams, label: str, *names: str) -> float:
        key = f"{label}({'*'.join(names)})"
        if key not in self.operands:
            f = product(*(self.roles[n] for n in names))
            res = self.ctx.ev.core(p, f, self.x)
            self.converged &= res.converged
            self.operands[key] = self.ctx.ev.prefactor(p, self.x) * res.value
        return self.operands[key]

    def lam(self, p: FractionalParams, label: str = "Lambda") -> float:
        self.operands[label] = lambda_fn(p, self.x)
        return self.operands[label]

    def put(self, name: str, value: float) -> float:
        self.operands[name] = float(value)
        return self.operands[name]


def _params(p1: FractionalParams, p2: FractionalParams | None = None) -> dict:
    d = p1.as_dict()
    if p2 is not None:
        d["delta"] = p2.alpha
        d["lambda"] = p2.beta
    return d


def _same_kernel(p1: FractionalParams, p2: FractionalParams) -> None:
    if not p1.shares_kernel_with(p2):
        raise DomainError("both parameter sets must share rho, k and eta")


def _tol(ctx: Verifier, terms) -> float:
    scale = max([1.0] + [abs(t) for t in terms if math.isfinite(t)])
    return ctx.rel_tol * scale


def _finish_gap(rep: InequalityReport, terms, certified: str, ctx: Verifier,
                two_sided: bool = False) -> InequalityReport:
    rep.tol = _tol(ctx, terms)
    vals = list(rep.operands.values()) + [rep.gap]
    if not all(math.isfinite(v) for v in vals):
        rep.verdict, rep.reason = "indeterminate", "non-finite operand"
    elif not rep.converged:
        rep.verdict, rep.reason = "indeterminate", "quadrature did not converge"
    elif two_sided:
        rep.verdict = "holds" if abs(rep.gap) <= rep.tol else "violated"
    elif certified == "synchronous":
        rep.verdict = "holds" if rep.gap >= -rep.tol else "violated"
    elif certified == "asynchronous":
        rep.verdict = "holds" if rep.gap <= rep.tol else "violated"
    else:
        rep.verdict, rep.reason = "indeterminate", "pair could not be certified"
    return rep


def _finish_chain(rep: InequalityReport, terms, ctx: Verifier) -> InequalityReport:
    rep.tol = _tol(ctx, list(terms) + list(rep.chain))
    vals = list(rep.operands.values()) + list(rep.chain)
    if not all(math.isfinite(v) for v in vals):
        rep.verdict, rep.reason = "indeterminate", "non-finite operand"
    elif not rep.converged:
        rep.verdict, rep.reason = "indeterminate", "quadrature did not converge"
    else:
        ok = all(a <= b + rep.tol for a, b in zip(rep.chain[:-1], rep.chain[1:]))
        rep.verdict = "holds" if ok else "violated"
    return rep


def _weights_ok(ctx: Verifier, x: float, weights: dict, strict: bool = False) -> str | None:
    for name, w in weights.items():
        if not ctx.nonnegative(w, x, strict):
            kind = "positive" if strict else "nonnegative"
            return f"weight {name}={w.spec} is not {kind} on (0, x]"
    return None


def _reject(rep: InequalityReport, reason: str) -> InequalityReport:
    rep.verdict, rep.reason = "indeterminate", reason
    return rep


# ---------------------------------------------------------------- classical

def _mean_integral(f, a: float, b: float, cfg) -> float:
    h = b - a
    res = integrate_single(1.0, 0.0, lambda t: f(a + h * t), cfg)
    return h * res.value


def classical_chebyshev(phi: Integrand, psi: Integrand, a: float, b: float,
                        cfg: QuadratureConfig | None = None) -> float:
    """T(phi, psi) = mean(phi psi) - mean(phi) mean(psi) over (a, b)."""
    if not a < b:
        raise DomainError(f"need a < b, got ({a}, {b})")
    L = b - a
    return (_mean_integral(lambda t: phi(t) * psi(t), a, b, cfg) / L
            - _mean_integral(phi, a, b, cfg) * _mean_integral(psi, a, b, cfg) / L ** 2)


def classical_extended(phi: Integrand, psi: Integrand, g: Integrand, h: Integrand,
                       a: float, b: float, cfg: QuadratureConfig | None = None) -> float:
    """T(phi, psi, g, h), nonnegative for synchronous pairs and g, h >= 0."""
    if not a < b:
        raise DomainError(f"need a < b, got ({a}, {b})")
    J = lambda f: _mean_integral(f, a, b, cfg)  # noqa: E731
    return (J(h) * J(lambda t: phi(t) * psi(t) * g(t)) + J(g) * J(lambda t: phi(t) * psi(t) * h(t))
            - J(lambda t: phi(t) * h(t)) * J(lambda t: psi(t) * g(t))
            - J(lambda t: phi(t) * g(t)) * J(lambda t: psi(t) * h(t)))


def classical_weighted(phi: Integrand, psi: Integrand, g: Integrand, a: float, b: float,
                       cfg: QuadratureConfig | None = None) -> float:
    """T(phi, psi, g) = int g * int g phi psi - int g phi * int g psi."""
    if not a < b:
        raise DomainError(f"need a < b, got ({a}, {b})")
    J = lambda f: _mean_integral(f, a, b, cfg)  # noqa: E731
    return (J(g) * J(lambda t: g(t) * phi(t) * psi(t))
            - J(lambda t: g(t) * phi(t)) * J(lambda t: g(t) * psi(t)))


def report_classical_t(pair: SynchronousPair, x: float,
                       ctx: Verifier | None = None) -> InequalityReport:
    """Classical Chebyshev functional on (0, x) as a gap (>= 0 when synchronous)."""
    ctx = _ctx(ctx)
    x = check_point(x)
    phi, psi = pair.phi, pair.psi
    J = lambda f: _mean_integral(f, 0.0, x, ctx.cfg)  # noqa: E731
    ops = {"int(phi*psi)": J(lambda t: phi(t) * psi(t)), "int(phi)": J(phi), "int(psi)": J(psi)}
    mean_prod = ops["int(phi*psi)"] / x
    prod_mean = ops["int(phi)"] * ops["int(psi)"] / x ** 2
    rep = InequalityReport("classical-T", {}, x, pair.specs, ops, gap=mean_prod - prod_mean)
    return _finish_gap(rep, [mean_prod, prod_mean], pair.certified, ctx)


def report_classical_t4(phi: Integrand, psi: Integrand, g: Integrand, hp: HolderPair, x: float,
                        ctx: Verifier | None = None) -> InequalityReport:
    """Two-link chain 2|T(phi, psi, g)| <= |phi'|_s |psi'|_v int int |t-u| g g on (0, x)."""
    ctx = _ctx(ctx)
    x = check_point(x)
    rep = InequalityReport("classical-T4", {}, x, [phi.spec, psi.spec, g.spec], {})
    bad = _weights_ok(ctx, x, {"g": g})
    if bad:
        return _reject(rep, bad)
    T = classical_weighted(phi, psi, g, 0.0, x, ctx.cfg)
    n1, n2 = ctx.norm(phi, hp.s, x), ctx.norm(psi, hp.v, x)
    dd = integrate_double((1.0, 0.0), (1.0, 0.0),
                          lambda t, u: g(x * t) * g(x * u) * np.abs(x * t - x * u),
                          ctx.cfg, diagonal_split=True)
    rep.converged = dd.converged
    rep.operands = {"T(phi,psi,g)": T, "norm_s(phi')": n1, "norm_v(psi')": n2,
                    "s": hp.s, "v": hp.v, "D": x * x * dd.value}
    rep.chain = [2.0 * abs(T), n1 * n2 * x * x * dd.value]
    return _finish_chain(rep, [T], ctx)


# ---------------------------------------------------------------- two-function gaps

def gap_t31(p: FractionalParams, pair: SynchronousPair, x: float,
            ctx: Verifier | None = None) -> InequalityReport:
    """gap = I(phi psi) - I(phi) I(psi) / Lambda."""
    ctx = _ctx(ctx)
    x = check_point(x)
    A = _Assembly(ctx, x, {"phi": pair.phi, "psi": pair.psi})
    lam = A.lam(p)
    lhs = A.I(p, "I", "phi", "psi")
    rhs = A.I(p, "I", "phi") * A.I(p, "I", "psi") / lam
    rep = InequalityReport("T3.1", _params(p), x, pair.specs, A.operands,
                           gap=lhs - rhs, converged=A.converged)
    return _finish_gap(rep, [lhs, rhs], pair.certified, ctx)


def gap_t32(p1: FractionalParams, p2: FractionalParams, pair: SynchronousPair, x: float,
            ctx: Verifier | None = None) -> InequalityReport:
    """gap = Lambda2 I1(phi psi) + Lambda1 I2(phi psi) - I1(phi) I2(psi) - I1(psi) I2(phi)."""
    ctx = _ctx(ctx)
    x = check_point(x)
    _same_kernel(p1, p2)
    A = _Assembly(ctx, x, {"phi": pair.phi, "psi": pair.psi})
    l1, l2 = A.lam(p1, "Lambda1"), A.lam(p2, "Lambda2")
    terms = [l2 * A.I(p1, "I1", "phi", "psi"), l1 * A.I(p2, "I2", "phi", "psi"),
             A.I(p1, "I1", "phi") * A.I(p2, "I2", "psi"),
             A.I(p1, "I1", "psi") * A.I(p2, "I2", "phi")]
    rep = InequalityReport("T3.2", _params(p1, p2), x, pair.specs, A.operands,
                           gap=terms[0] + terms[1] - terms[2] - terms[3], converged=A.converged)
    return _finish_gap(rep, terms, pair.certified, ctx)


# ---------------------------------------------------------------- weighted gaps

def _lemma_terms(A: _Assembly, p1, l1, p2, l2, a: str, b: str):
    """The four products of the weighted lemma for weights a (operator p1) and b (p2)."""
    return [A.I(p1, l1, a, "phi", "psi") * A.I(p2, l2, b),
            A.I(p1, l1, a) * A.I(p2, l2, b, "phi", "psi"),
            A.I(p1, l1, a, "phi") * A.I(p2, l2, b, "psi"),
            A.I(p1, l1, a, "psi") * A.I(p2, l2, b, "phi")]


def gap_l41(p: FractionalParams, pair: SynchronousPair, s_w: Integrand, v_w: Integrand,
            x: float, ctx: Verifier | None = None) -> InequalityReport:
    """gap = I(s phi psi) I(v) + I(s) I(v phi psi) - I(s phi) I(v psi) - I(s psi) I(v phi)."""
    ctx = _ctx(ctx)
    x = check_point(x)
    rep = InequalityReport("L4.1", _params(p), x, pair.specs + [s_w.spec, v_w.spec], {})
    bad = _weights_ok(ctx, x, {"s": s_w, "v": v_w})
    if bad:
        return _reject(rep, bad)
    A = _Assembly(ctx, x, {"phi": pair.phi, "psi": pair.psi, "s": s_w, "v": v_w})
    t = _lemma_terms(A, p, "I", p, "I", "s", "v")
    rep.operands, rep.converged = A.operands, A.converged
    rep.gap = t[0] + t[1] - t[2] - t[3]
    return _finish_gap(rep, t, pair.certified, ctx)


def gap_l43(p1: FractionalParams, p2: FractionalParams, pair: SynchronousPair,
            s_w: Integrand, v_w: Integrand, x: float,
            ctx: Verifier | None = None) -> InequalityReport:
    """As `gap_l41` with the (delta, lambda) operator on every v-side operand."""
    ctx = _ctx(ctx)
    x = check_point(x)
    _same_kernel(p1, p2)
    rep = InequalityReport("L4.3", _params(p1, p2), x, pair.specs + [s_w.spec, v_w.spec], {})
    bad = _weights_ok(ctx, x, {"s": s_w, "v": v_w})
    if bad:
        return _reject(rep, bad)
    A = _Assembly(ctx, x, {"phi": pair.phi, "psi": pair.psi, "s": s_w, "v": v_w})
    t = _lemma_terms(A, p1, "I1", p2, "I2", "s", "v")
    rep.operands, rep.converged = A.operands, A.converged
    rep.gap = t[0] + t[1] - t[2] - t[3]
    return _finish_gap(rep, t, pair.certified, ctx)


def gap_t42(p: FractionalParams, pair: SynchronousPair, f_w: Integrand, g_w: Integrand,
            h_w: Integrand, x: float, ctx: Verifier | None = None) -> InequalityReport:
    """Three-weight inequality: four LHS and six RHS products, each computed separately."""
    ctx = _ctx(ctx)
    x = check_point(x)
    rep = InequalityReport("T4.2", _params(p), x,
                           pair.specs + [f_w.spec, g_w.spec, h_w.spec], {})
    bad = _weights_ok(ctx, x, {"f": f_w, "g": g_w, "h": h_w})
    if bad:
        return _reject(rep, bad)
    A = _Assembly(ctx, x, {"phi": pair.phi, "psi": pair.psi, "f": f_w, "g": g_w, "h": h_w})
    I = lambda *n: A.I(p, "I", *n)  # noqa: E731
    lhs = [I("h") * I("f", "phi", "psi") * I("g"),
           2.0 * I("h") * I("f") * I("g", "phi", "psi"),
           I("h") * I("g") * I("f", "phi", "psi"),
           2.0 * I("f") * I("h", "phi", "psi") * I("g")]
    rhs = [I("h") * I("f", "phi") * I("g", "psi"), I("h") * I("f", "psi") * I("g", "phi"),
           I("f") * I("h", "phi") * I("g", "psi"), I("f") * I("h", "psi") * I("g", "phi"),
           I("g") * I("h", "phi") * I("f", "psi"), I("g") * I("h", "psi") * I("f", "phi")]
    rep.operands, rep.converged = A.operands, A.converged
    rep.gap = math.fsum(lhs) - math.fsum(rhs)
    return _finish_gap(rep, lhs + rhs, pair.certified, ctx)


def gap_t44(p1: FractionalParams, p2: FractionalParams, pair: SynchronousPair,
            f_w: Integrand, g_w: Integrand, h_w: Integrand, x: float,
            ctx: Verifier | None = None) -> InequalityReport:
    """Mixed-parameter three-weight inequality: five LHS and six RHS products."""
    ctx = _ctx(ctx)
    x = check_point(x)
    _same_kernel(p1, p2)
    rep = InequalityReport("T4.4", _params(p1, p2), x,
                           pair.specs + [f_w.spec, g_w.spec, h_w.spec], {})
    bad = _weights_ok(ctx, x, {"f": f_w, "g": g_w, "h": h_w})
    if bad:
        return _reject(rep, bad)
    A = _Assembly(ctx, x, {"phi": pair.phi, "psi": pair.psi, "f": f_w, "g": g_w, "h": h_w})
    I1 = lambda *n: A.I(p1, "I1", *n)  # noqa: E731
    I2 = lambda *n: A.I(p2, "I2", *n)  # noqa: E731
    lhs = [I1("h") * I1("f", "phi", "psi") * I2("g"),
           2.0 * I1("h") * I1("f") * I2("g", "phi", "psi"),
           I1("h") * I1("g") * I2("f", "phi", "psi"),
           I1("f") * I2("g") * I1("h", "phi", "psi"),
           I1("g") * I2("f") * I1("h", "phi", "psi")]
    rhs = [I1("h") * I1("f", "phi") * I2("g", "psi"), I1("h") * I1("f", "psi") * I2("g", "phi"),
           I1("f") * I1("h", "phi") * I2("g", "psi"), I1("f") * I1("h", "psi") * I2("g", "phi"),
           I1("g") * I1("h", "phi") * I2("f", "psi"), I1("g") * I1("h", "psi") * I2("f", "phi")]
    rep.operands, rep.converged = A.operands, A.converged
    rep.gap = math.fsum(lhs) - math.fsum(rhs)
    return _finish_gap(rep, lhs + rhs, pair.certified, ctx)


# ---------------------------------------------------------------- norm chains

def _l51(ctx: Verifier, p: FractionalParams, h_w, phi, psi, x: float):
    A = _Assembly(ctx, x, {"phi": phi, "psi": psi, "h": h_w})
    I = lambda *n: A.I(p, "I", *n)  # noqa: E731
    t1, t2 = I("h", "phi", "psi") * I("h"), I("h", "psi") * I("h", "phi")
    rhs = 2.0 * (t1 - t2)
    dd = ctx.h_kernel(p, h_w, phi, psi, x)
    lhs = ctx.ev.prefactor(p, x) ** 2 * dd.value
    A.converged &= dd.converged
    A.put("lhs", lhs)
    A.put("rhs", rhs)
    return A, lhs, rhs, [t1, t2, lhs, rhs]


def identity_l51(p: FractionalParams, h_w: Integrand, phi: Integrand, psi: Integrand,
                 x: float, ctx: Verifier | None = None) -> IdentityResult:
    """Double integral of the kernel-weighted H(tau, gamma) against its closed form.

    rhs = 2 [I(h phi psi) I(h) - I(h psi) I(h phi)].
    """
    ctx = _ctx(ctx)
    x = check_point(x)
    _, lhs, rhs, _ = _l51(ctx, p, h_w, phi, psi, x)
    return IdentityResult(lhs, rhs, abs(lhs - rhs))


def report_l51(p: FractionalParams, h_w: Integrand, phi: Integrand, psi: Integrand,
               x: float, ctx: Verifier | None = None) -> InequalityReport:
    """`identity_l51` as a report; gap = lhs - rhs, holds iff |gap| <= tol."""
    ctx = _ctx(ctx)
    x = check_point(x)
    rep = InequalityReport("L5.1-identity", _params(p), x, [phi.spec, psi.spec, h_w.spec], {})
    bad = _weights_ok(ctx, x, {"h": h_w}, strict=True)
    if bad:
        return _reject(rep, bad)
    A, lhs, rhs, terms = _l51(ctx, p, h_w, phi, psi, x)
    rep.operands, rep.converged = A.operands, A.converged
    rep.gap = lhs - rhs
    return _finish_gap(rep, terms, "synchronous", ctx, two_sided=True)


def _norms(ctx: Verifier, A: _Assembly, phi, psi, hp: HolderPair, T: float):
    n1 = A.put("norm_s(phi')", ctx.norm(phi, hp.s, T))
    n2 = A.put("norm_v(psi')", ctx.norm(psi, hp.v, T))
    A.put("s", hp.s)
    A.put("v", hp.v)
    A.put("T_norm", T)
    return n1, n2


def chain_t52(p: FractionalParams, h_w: Integrand, phi: Integrand, psi: Integrand,
              hp: HolderPair, x: float, T_norm: float | None = None,
              ctx: Verifier | None = None) -> InequalityReport:
    """Chain (A, B, C) with
    A = 2 |I(h phi psi) I(h) - I(h psi) I(h phi)|,
    B = |phi'|_s |psi'|_v times the kernel-weighted int int h h |tau - gamma|,
    C = |phi'|_s |psi'|_v x (I h)**2.
    Norms are taken over (0, T_norm), T_norm defaulting to x.
    """
    ctx = _ctx(ctx)
    x = check_point(x)
    T = x if T_norm is None else float(T_norm)
    rep = InequalityReport("T5.2", _params(p), x, [phi.spec, psi.spec, h_w.spec], {})
    bad = _weights_ok(ctx, x, {"h": h_w}, strict=True)
    if bad:
        return _reject(rep, bad)
    A = _Assembly(ctx, x, {"phi": phi, "psi": psi, "h": h_w})
    I = lambda *n: A.I(p, "I", *n)  # noqa: E731
    t1, t2 = I("h", "phi", "psi") * I("h"), I("h", "psi") * I("h", "phi")
    n1, n2 = _norms(ctx, A, phi, psi, hp, T)
    dd = ctx.abs_kernel(p, p, h_w, x)
    A.converged &= dd.converged
    D = A.put("D", ctx.ev.prefactor(p, x) ** 2 * dd.value)
    rep.operands, rep.converged = A.operands, A.converged
    rep.chain = [2.0 * abs(t1 - t2), n1 * n2 * D, n1 * n2 * x * I("h") ** 2]
    return _finish_chain(rep, [t1, t2], ctx)


def chain_t53(p1: FractionalParams, p2: FractionalParams, h_w: Integrand, phi: Integrand,
              psi: Integrand, hp: HolderPair, x: float, T_norm: float | None = None,
              ctx: Verifier | None = None) -> InequalityReport:
    """Mixed-parameter chain (|A|, B, C).

    A = I1(h phi psi) I2(h) - I2(h psi) I1(h phi) - I2(h phi) I1(h psi) + I2(h phi psi) I1(h)
    is kept signed in the operands. B uses the mixed kernel with prefactor
    rho**(2 - beta - lambda) x**(2k) / (Gamma(alpha) Gamma(delta)).
    C = |phi'|_s |psi'|_v x I1(h) I2(h).
    """
    ctx = _ctx(ctx)
    x = check_point(x)
    _same_kernel(p1, p2)
    T = x if T_norm is None else float(T_norm)
    rep = InequalityReport("T5.3", _params(p1, p2), x, [phi.spec, psi.spec, h_w.spec], {})
    bad = _weights_ok(ctx, x, {"h": h_w}, strict=True)
    if bad:
        return _reject(rep, bad)
    A = _Assembly(ctx, x, {"phi": phi, "psi": psi, "h": h_w})
    I1 = lambda *n: A.I(p1, "I1", *n)  # noqa: E731
    I2 = lambda *n: A.I(p2, "I2", *n)  # noqa: E731
    terms = [I1("h", "phi", "psi") * I2("h"), I2("h", "psi") * I1("h", "phi"),
             I2("h", "phi") * I1("h", "psi"), I2("h", "phi", "psi") * I1("h")]
    a = A.put("A", terms[0] - terms[1] - terms[2] + terms[3])
    n1, n2 = _norms(ctx, A, phi, psi, hp, T)
    dd = ctx.abs_kernel(p1, p2, h_w, x)
    A.converged &= dd.converged
    D = A.put("D", ctx.ev.prefactor(p1, x) * ctx.ev.prefactor(p2, x) * dd.value)
    rep.operands, rep.converged = A.operands, A.converged
    rep.chain = [abs(a), n1 * n2 * D, n1 * n2 * x * I1("h") * I2("h")]
    return _finish_chain(rep, terms, ctx)


def remark_rl(alpha: float, h_w: Integrand, phi: Integrand, psi: Integrand, hp: HolderPair,
              x: float, delta: float | None = None,
              ctx: Verifier | None = None) -> InequalityReport:
    """Riemann-Liouville form (k = eta = 0, rho = 1) of the derivative-norm chains.

    Evaluated in the original variable with the kernel (x - tau)**(alpha-1),
    independently of the generalized operator code path. With ``delta`` the
    mixed-order chain is produced.
    """
    ctx = _ctx(ctx)
    x = check_point(x)
    d = alpha if delta is None else float(delta)
    params = {"alpha": alpha, "beta": 0.0, "rho": 1.0, "k": 0.0, "eta": 0.0}
    if delta is not None:
        params.update(delta=d, **{"lambda": 0.0})
    rep = InequalityReport("remark-RL", params, x, [phi.spec, psi.spec, h_w.spec], {})
    bad = _weights_ok(ctx, x, {"h": h_w}, strict=True)
    if bad:
        return _reject(rep, bad)
    conv = True

    def rl(order: float, f) -> float:
        nonlocal conv
        # I^a f(x) = x**a / Gamma(a) int_0^1 (1-t)**(a-1) f(x t) dt
        r = integrate_single(order, 0.0, lambda t: f(x * t), ctx.cfg)
        conv &= r.converged
        return x ** order / math.gamma(order) * r.value

    hpp = lambda t: h_w(t) * phi(t) * psi(t)  # noqa: E731
    hphi = lambda t: h_w(t) * phi(t)  # noqa: E731
    hpsi = lambda t: h_w(t) * psi(t)  # noqa: E731
    ops = {"Ia(h)": rl(alpha, h_w), "Ia(h*phi*psi)": rl(alpha, hpp),
           "Ia(h*phi)": rl(alpha, hphi), "Ia(h*psi)": rl(alpha, hpsi)}
    if delta is None:
        terms = [ops["Ia(h)"] * ops["Ia(h*phi*psi)"], ops["Ia(h*phi)"] * ops["Ia(h*psi)"]]
        a = 2.0 * abs(terms[0] - terms[1])
    else:
        ops.update({"Id(h)": rl(d, h_w), "Id(h*phi*psi)": rl(d, hpp),
                    "Id(h*phi)": rl(d, hphi), "Id(h*psi)": rl(d, hpsi)})
        terms = [ops["Ia(h*phi*psi)"] * ops["Id(h)"], ops["Id(h*psi)"] * ops["Ia(h*phi)"],
                 ops["Id(h*phi)"] * ops["Ia(h*psi)"], ops["Id(h*phi*psi)"] * ops["Ia(h)"]]
        a = abs(terms[0] - terms[1] - terms[2] + terms[3])
    n1, n2 = ctx.norm(phi, hp.s, x), ctx.norm(psi, hp.v, x)
    dd = integrate_double((alpha, 0.0), (d, 0.0),
                          lambda t, u: h_w(x * t) * h_w(x * u) * np.abs(x * t - x * u),
                          ctx.cfg, diagonal_split=True)
    conv &= dd.converged
    D = x ** (alpha + d) / (math.gamma(alpha) * math.gamma(d)) * dd.value
    ops.update({"norm_s(phi')": n1, "norm_v(psi')": n2, "s": hp.s, "v": hp.v, "D": D})
    rep.operands, rep.converged = ops, conv
    second = ops["Id(h)"] if delta is not None else ops["Ia(h)"]
    rep.chain = [a, n1 * n2 * D, n1 * n2 * x * ops["Ia(h)"] * second]
    return _finish_chain(rep, terms, ctx)
