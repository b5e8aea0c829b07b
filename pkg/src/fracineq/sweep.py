"""Parameter sweeps: the SweepSpec format and batch verification."""

from __future__ import annotations

import itertools
import json
import math
import warnings
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import inequalities as ineq
from .errors import FracIneqError
from .functions import HolderPair, certify_pair, parse_integrand
from .quadrature import QuadratureConfig, QuadratureWarning
from .special import FractionalParams


class SweepParseError(FracIneqError, ValueError):
    """Malformed sweep document; ``pointer`` is a JSON pointer to the bad value."""

    def __init__(self, message: str, pointer: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


TWO_PARAM = {"T3.2", "L4.3", "T4.4", "T5.3"}
_LIST_FIELDS = ("alpha", "delta", "beta", "lambda", "rho", "k", "eta", "x", "holder_s")


@dataclass
class SweepSpec:
    theorem_ids: list = field(default_factory=lambda: list(ineq.THEOREM_IDS))
    alpha: list = field(default_factory=lambda: [1.0])
    delta: list = field(default_factory=lambda: [1.0])
    beta: list = field(default_factory=lambda: [0.0])
    lambda_: list = field(default_factory=lambda: [0.0])
    rho: list = field(default_factory=lambda: [1.0])
    k: list = field(default_factory=lambda: [0.0])
    eta: list = field(default_factory=lambda: [0.0])
    x: list = field(default_factory=lambda: [1.0])
    function_pairs: list = field(default_factory=lambda: [["pow:1", "pow:2"]])
    weights: list = field(default_factory=lambda: ["const:1"])
    holder_s: list = field(default_factory=lambda: [2.0])
    tol_override: float | None = None
    seed: int = 0
    # cap on reports per theorem (int for all, or {theorem_id: int | None})
    max_cases: int | dict | None = None

    def to_json(self) -> dict:
        return {
            "theorem_ids": list(self.theorem_ids),
            "alpha": list(self.alpha), "delta": list(self.delta),
            "beta": list(self.beta), "lambda": list(self.lambda_),
            "rho": list(self.rho), "k": list(self.k), "eta": list(self.eta), "x": list(self.x),
            "function_pairs": [list(p) for p in self.function_pairs],
            "weights": list(self.weights),
            "holder_s": list(self.holder_s),
            "tol_override": self.tol_override,
            "seed": self.seed,
            "max_cases": self.max_cases,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, doc) -> SweepSpec:
        if not isinstance(doc, dict):
            raise SweepParseError("sweep must be a JSON object", "")
        known = {"theorem_ids", "function_pairs", "weights", "tol_override", "seed", "max_cases",
                 *_LIST_FIELDS}
        for key in doc:
            if key not in known:
                raise SweepParseError(f"unknown field {key!r}", f"/{_esc(key)}")
        kw = {}
        if "theorem_ids" in doc:
            ids = _list(doc, "theorem_ids")
            for i, t in enumerate(ids):
                if t not in ineq.THEOREM_IDS:
                    raise SweepParseError(f"unknown theorem id {t!r}", f"/theorem_ids/{i}")
            kw["theorem_ids"] = ids
        for name in _LIST_FIELDS:
            if name in doc:
                kw["lambda_" if name == "lambda" else name] = _reals(doc, name)
        if "function_pairs" in doc:
            pairs = _list(doc, "function_pairs")
            for i, p in enumerate(pairs):
                if not (isinstance(p, list) and len(p) == 2):
                    raise SweepParseError("expected a [phi, psi] pair", f"/function_pairs/{i}")
                for j, s in enumerate(p):
                    _spec(s, f"/function_pairs/{i}/{j}")
            kw["function_pairs"] = [list(p) for p in pairs]
        if "weights" in doc:
            ws = _list(doc, "weights")
            for i, s in enumerate(ws):
                _spec(s, f"/weights/{i}")
            kw["weights"] = ws
        if doc.get("tol_override") is not None:
            v = doc["tol_override"]
            if not _is_real(v) or not v > 0:
                raise SweepParseError("tol_override must be a positive number", "/tol_override")
            kw["tol_override"] = float(v)
        if "seed" in doc:
            if not isinstance(doc["seed"], int) or isinstance(doc["seed"], bool):
                raise SweepParseError("seed must be an integer", "/seed")
            kw["seed"] = doc["seed"]
        if doc.get("max_cases") is not None:
            kw["max_cases"] = _max_cases(doc["max_cases"])
        spec = cls(**kw)
        spec.validate()
        return spec

    @classmethod
    def loads(cls, text: str) -> SweepSpec:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise SweepParseError(f"invalid JSON ({e.msg} at line {e.lineno} column {e.colno})",
                                  "") from None
        return cls.from_json(doc)

    @classmethod
    def load(cls, path) -> SweepSpec:
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())

    @classmethod
    def standard(cls) -> SweepSpec:
        text = resources.files("fracineq").joinpath("data/standard_sweep.json").read_text("utf-8")
        return cls.loads(text)

    def validate(self) -> None:
        checks = {"alpha": lambda v: v > 0, "delta": lambda v: v > 0, "rho": lambda v: v > 0,
                  "eta": lambda v: v > -1, "x": lambda v: v > 0, "holder_s": lambda v: v > 1}
        for name, ok in checks.items():
            for i, v in enumerate(getattr(self, name)):
                if not ok(v):
                    raise SweepParseError(f"value {v!r} out of range", f"/{name}/{i}")
        for name, ref in (("beta", "alpha"), ("lambda_", "delta")):
            for i, v in enumerate(getattr(self, name)):
                if isinstance(v, str) and v != ref:
                    raise SweepParseError(f"expected a number or {ref!r}",
                                          f"/{name.rstrip('_')}/{i}")

    def cap(self, theorem_id: str) -> int | None:
        if isinstance(self.max_cases, dict):
            return self.max_cases.get(theorem_id)
        return self.max_cases


def _esc(key: str) -> str:
    return str(key).replace("~", "~0").replace("/", "~1")


def _is_real(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def _list(doc, name):
    v = doc[name]
    if not isinstance(v, list) or not v:
        raise SweepParseError("expected a non-empty list", f"/{name}")
    return v


def _reals(doc, name):
    out = []
    for i, v in enumerate(_list(doc, name)):
        if name in ("beta", "lambda") and isinstance(v, str):
            out.append(v)
            continue
        if not _is_real(v):
            raise SweepParseError(f"expected a finite number, got {v!r}", f"/{name}/{i}")
        out.append(float(v))
    return out


def _spec(s, pointer):
    if not isinstance(s, str):
        raise SweepParseError("expected a function spec string", pointer)
    try:
        parse_integrand(s)
    except FracIneqError as e:
        raise SweepParseError(str(e), pointer) from None


def _max_cases(v):
    if isinstance(v, int) and not isinstance(v, bool) and v > 0:
        return v
    if isinstance(v, dict):
        for key, n in v.items():
            if key not in ineq.THEOREM_IDS:
                raise SweepParseError(f"unknown theorem id {key!r}", f"/max_cases/{_esc(key)}")
            if n is not None and not (isinstance(n, int) and not isinstance(n, bool) and n > 0):
                raise SweepParseError("expected a positive integer or null",
                                      f"/max_cases/{_esc(key)}")
        return dict(v)
    raise SweepParseError("expected a positive integer or an object", "/max_cases")


# ---------------------------------------------------------------- execution

def _params1(spec: SweepSpec):
    for a, b, r, k, e in itertools.product(spec.alpha, spec.beta, spec.rho, spec.k, spec.eta):
        yield FractionalParams(a, a if b == "alpha" else b, r, k, e)


def _params2(spec: SweepSpec):
    for p in _params1(spec):
        for d, lam in itertools.product(spec.delta, spec.lambda_):
            yield p, FractionalParams(d, d if lam == "delta" else lam, p.rho, p.k, p.eta)


def _axes(spec: SweepSpec, tid: str) -> list:
    w = spec.weights
    hs = spec.holder_s
    pairs = [tuple(p) for p in spec.function_pairs]
    if tid == "classical-T":
        return [spec.x, pairs]
    if tid == "classical-T4":
        return [spec.x, pairs, w, hs]
    if tid == "remark-RL":
        return [spec.alpha, spec.x, pairs, w, hs]
    base = list(_params2(spec)) if tid in TWO_PARAM else list(_params1(spec))
    tail = {"T3.1": [], "T3.2": [], "L4.1": [w, w], "L4.3": [w, w], "T4.2": [w, w, w],
            "T4.4": [w, w, w], "L5.1-identity": [w], "T5.2": [w, hs], "T5.3": [w, hs]}[tid]
    return [base, spec.x, pairs, *tail]


def cases(spec: SweepSpec, tid: str) -> list:
    """The (possibly subsampled) list of argument tuples for one theorem."""
    axes = _axes(spec, tid)
    dims = [len(a) for a in axes]
    total = math.prod(dims)
    cap = spec.cap(tid)
    if cap is None or cap >= total:
        idx = range(total)
    else:
        rng = np.random.default_rng([spec.seed, ineq.THEOREM_IDS.index(tid)])
        idx = np.sort(rng.choice(total, size=cap, replace=False))
    out = []
    for i in idx:
        pos = np.unravel_index(int(i), dims)
        out.append(tuple(a[j] for a, j in zip(axes, pos)))
    return out


class SweepRunner:
    def __init__(self, spec: SweepSpec, cfg: QuadratureConfig | None = None):
        self.spec = spec
        rel = spec.tol_override if spec.tol_override is not None else ineq.DEFAULT_REL_TOL
        self.ctx = ineq.Verifier(cfg, rel_tol=rel)
        self._fn: dict = {}
        self._pairs: dict = {}

    def f(self, s: str):
        if s not in self._fn:
            self._fn[s] = parse_integrand(s)
        return self._fn[s]

    def pair(self, specs, x):
        key = (tuple(specs), x)
        if key not in self._pairs:
            self._pairs[key] = certify_pair(self.f(specs[0]), self.f(specs[1]), x)
        return self._pairs[key]

    def one(self, tid: str, case: tuple) -> ineq.InequalityReport:
        f, ctx = self.f, self.ctx
        if tid == "classical-T":
            x, pr = case
            return ineq.report_classical_t(self.pair(pr, x), x, ctx)
        if tid == "classical-T4":
            x, pr, g, s = case
            return ineq.report_classical_t4(f(pr[0]), f(pr[1]), f(g), HolderPair.conjugate(s),
                                            x, ctx)
        if tid == "remark-RL":
            a, x, pr, h, s = case
            return ineq.remark_rl(a, f(h), f(pr[0]), f(pr[1]), HolderPair.conjugate(s), x,
                                  ctx=ctx)
        p, x, pr, *w = case
        P = self.pair(pr, x)
        if tid == "T3.1":
            return ineq.gap_t31(p, P, x, ctx)
        if tid == "T3.2":
            return ineq.gap_t32(*p, P, x, ctx)
        if tid == "L4.1":
            return ineq.gap_l41(p, P, f(w[0]), f(w[1]), x, ctx)
        if tid == "L4.3":
            return ineq.gap_l43(*p, P, f(w[0]), f(w[1]), x, ctx)
        if tid == "T4.2":
            return ineq.gap_t42(p, P, f(w[0]), f(w[1]), f(w[2]), x, ctx)
        if tid == "T4.4":
            return ineq.gap_t44(*p, P, f(w[0]), f(w[1]), f(w[2]), x, ctx)
        if tid == "L5.1-identity":
            return ineq.report_l51(p, f(w[0]), P.phi, P.psi, x, ctx)
        if tid == "T5.2":
            return ineq.chain_t52(p, f(w[0]), P.phi, P.psi, HolderPair.conjugate(w[1]), x,
                                  ctx=ctx)
        if tid == "T5.3":
            return ineq.chain_t53(*p, f(w[0]), P.phi, P.psi, HolderPair.conjugate(w[1]), x,
                                  ctx=ctx)
        raise ValueError(f"unknown theorem id {tid!r}")

    def _failed(self, tid, case, err) -> ineq.InequalityReport:
        xi = 0 if tid.startswith("classical") else 1
        head = case[0]
        if tid == "remark-RL":
            params = {"alpha": head, "beta": 0.0, "rho": 1.0, "k": 0.0, "eta": 0.0}
        elif isinstance(head, tuple):
            params = ineq._params(*head)
        elif isinstance(head, FractionalParams):
            params = ineq._params(head)
        else:
            params = {}
        fns = list(case[xi + 1]) + [c for c in case[xi + 2:] if isinstance(c, str)]
        return ineq.InequalityReport(tid, params, case[xi], fns, {}, reason=str(err))

    def run(self) -> list:
        reports = []
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", QuadratureWarning)
            for tid in self.spec.theorem_ids:
                for case in cases(self.spec, tid):
                    try:
                        reports.append(self.one(tid, case))
                    except FracIneqError as e:
                        reports.append(self._failed(tid, case, e))
        reports.sort(key=lambda r: r.sort_key())
        return reports


def summarize(reports) -> dict:
    out = {"holds": 0, "violated": 0, "indeterminate": 0}
    for r in reports:
        out[r.verdict] += 1
    return out


def dumps_reports(reports) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=1, allow_nan=False) + "\n"


def run_sweep(spec: SweepSpec, cfg: QuadratureConfig | None = None) -> list:
    return SweepRunner(spec, cfg).run()
