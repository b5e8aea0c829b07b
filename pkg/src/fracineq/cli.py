"""Command-line interface: compute, reduce, verify, nodes."""

from __future__ import annotations

import argparse
import math
import sys
import warnings

from . import inequalities as ineq
from .errors import FracIneqError, QuadratureWarning
from .functions import HolderPair, certify_pair, parse_integrand
from .operator import ReductionKind, katugampola_integral, power_closed_form, reduce
from .quadrature import QuadratureConfig, jacobi_rule
from .special import FractionalParams
from .sweep import SweepRunner, SweepSpec, dumps_reports, summarize

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VIOLATED = 0, 1, 2, 3
REDUCE_TOL = 1e-9
KINDS = {"riemann-liouville": ReductionKind.RIEMANN_LIOUVILLE,
         "katugampola": ReductionKind.KATUGAMPOLA,
         "erdelyi-kober": ReductionKind.ERDELYI_KOBER,
         "liouville-a0": ReductionKind.LIOUVILLE_A0}


class _Parser(argparse.ArgumentParser):
    # argparse uses exit status 2 for usage errors; 2 is reserved here for
    # quadrature non-convergence
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _real(s: str) -> float:
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite, got {s!r}")
    return v


def _bounded(lo: float, what: str):
    def conv(s: str) -> float:
        v = _real(s)
        if not v > lo:
            raise argparse.ArgumentTypeError(f"must be {what}, got {s!r}")
        return v
    return conv


_positive = _bounded(0.0, "> 0")
_eta = _bounded(-1.0, "> -1")
_holder = _bounded(1.0, "> 1")


def _count(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if v < 2:
        raise argparse.ArgumentTypeError(f"must be >= 2, got {v}")
    return v


def _function(s: str):
    try:
        return parse_integrand(s)
    except FracIneqError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _quad_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--quad-tol", type=_positive, default=None,
                   help="relative tolerance of adaptive doubling (default 1e-10)")
    p.add_argument("--quad-max", type=_count, default=None,
                   help="largest points-per-panel before giving up (default 4096)")


def _cfg(args) -> QuadratureConfig:
    over = {}
    if args.quad_tol is not None:
        over["rel_tol"] = args.quad_tol
    if args.quad_max is not None:
        over["n_max"] = args.quad_max
        over["n_start"] = min(QuadratureConfig.n_start, args.quad_max)
    return QuadratureConfig.from_env(**over)


def _param_args(p: argparse.ArgumentParser, alpha_required: bool = True) -> None:
    p.add_argument("--alpha", type=_positive, required=alpha_required)
    p.add_argument("--beta", type=_real, default=0.0)
    p.add_argument("--rho", type=_positive, default=1.0)
    p.add_argument("--k", type=_real, default=0.0)
    p.add_argument("--eta", type=_eta, default=0.0)
    p.add_argument("--x", type=_positive, required=True)


def cmd_compute(args) -> int:
    p = FractionalParams(args.alpha, args.beta, args.rho, args.k, args.eta)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", QuadratureWarning)
        res = katugampola_integral(p, args.function, args.x, _cfg(args), full_output=True)
    print(f"{res.value:.15g}")
    if not res.converged:
        print(f"warning: quadrature did not converge (n={res.n_used}, "
              f"last difference {res.est_err:.3g})", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _oracle(f, sigma: float | None, p: FractionalParams, x: float):
    """Closed-form value when f is a power (or constant), else None."""
    kind, _, body = f.spec.partition(":")
    if sigma is not None:
        return power_closed_form(p, sigma, x)
    if kind == "pow" and "*" not in f.spec:
        return power_closed_form(p, float(body), x)
    if kind == "const" and "*" not in f.spec:
        return float(body) * power_closed_form(p, 0.0, x)
    return None


def cmd_reduce(args) -> int:
    kind = KINDS.get(args.kind)
    if kind is None:
        print(f"error: unknown kind {args.kind!r}; supported kinds: {', '.join(KINDS)}. "
              "Weyl (lower limit -inf) and Hadamard (a limit operator) are not available.",
              file=sys.stderr)
        return EXIT_USAGE
    p = reduce(kind, args.alpha, rho=args.rho, eta=args.eta)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", QuadratureWarning)
        res = katugampola_integral(p, args.function, args.x, _cfg(args), full_output=True)
    oracle = _oracle(args.function, args.sigma_oracle, p, args.x)
    print(f"kind: {args.kind}")
    print("params: " + " ".join(f"{k}={v:.15g}" for k, v in p.as_dict().items()))
    print(f"value: {res.value:.15g}")
    if not res.converged:
        print("warning: quadrature did not converge", file=sys.stderr)
    if oracle is None:
        print("oracle: none (function is not a power)")
        return EXIT_OK if res.converged else EXIT_NUMERIC
    err = abs(res.value - oracle) / abs(oracle) if oracle != 0 else abs(res.value)
    print(f"oracle: {oracle:.15g}")
    print(f"rel_error: {err:.3e}")
    if err <= REDUCE_TOL:
        return EXIT_OK
    return EXIT_VIOLATED if res.converged else EXIT_NUMERIC


def _single_shot(args) -> list:
    tid = args.theorem
    phi, psi, x = args.phi, args.psi, args.x
    w = [parse_integrand(s) for s in (args.weights or [])]
    w += [parse_integrand("const:1")] * (3 - len(w))
    hp = HolderPair.conjugate(args.holder_s)
    ctx = ineq.Verifier(_cfg(args), rel_tol=args.tol or ineq.DEFAULT_REL_TOL)
    if tid == "classical-T":
        return [ineq.report_classical_t(certify_pair(phi, psi, x), x, ctx)]
    if tid == "classical-T4":
        return [ineq.report_classical_t4(phi, psi, w[0], hp, x, ctx)]
    if tid == "remark-RL":
        return [ineq.remark_rl(args.alpha, w[0], phi, psi, hp, x, delta=args.delta, ctx=ctx)]
    p1 = FractionalParams(args.alpha, args.beta, args.rho, args.k, args.eta)
    d = args.delta if args.delta is not None else args.alpha
    lam = args.lambda_ if args.lambda_ is not None else args.beta
    p2 = FractionalParams(d, lam, args.rho, args.k, args.eta)
    pair = certify_pair(phi, psi, x)
    table = {
        "T3.1": lambda: ineq.gap_t31(p1, pair, x, ctx),
        "T3.2": lambda: ineq.gap_t32(p1, p2, pair, x, ctx),
        "L4.1": lambda: ineq.gap_l41(p1, pair, w[0], w[1], x, ctx),
        "L4.3": lambda: ineq.gap_l43(p1, p2, pair, w[0], w[1], x, ctx),
        "T4.2": lambda: ineq.gap_t42(p1, pair, w[0], w[1], w[2], x, ctx),
        "T4.4": lambda: ineq.gap_t44(p1, p2, pair, w[0], w[1], w[2], x, ctx),
        "L5.1-identity": lambda: ineq.report_l51(p1, w[0], phi, psi, x, ctx),
        "T5.2": lambda: ineq.chain_t52(p1, w[0], phi, psi, hp, x, args.t_norm, ctx),
        "T5.3": lambda: ineq.chain_t53(p1, p2, w[0], phi, psi, hp, x, args.t_norm, ctx),
    }
    return [table[tid]()]


def cmd_verify(args) -> int:
    if args.sweep is not None:
        spec = SweepSpec.standard() if args.sweep == "standard" else SweepSpec.load(args.sweep)
        if args.tol is not None:
            spec.tol_override = args.tol
        reports = SweepRunner(spec, _cfg(args)).run()
    else:
        missing = [f"--{n}" for n in ("theorem", "phi", "psi", "x")
                   if getattr(args, n) is None]
        if args.theorem not in ("classical-T", "classical-T4") and args.alpha is None:
            missing.append("--alpha")
        if missing:
            print(f"error: single-shot verify needs {', '.join(missing)} (or use --sweep)",
                  file=sys.stderr)
            return EXIT_USAGE
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", QuadratureWarning)
            reports = _single_shot(args)
    text = dumps_reports(reports)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    counts = summarize(reports)
    print(" ".join(f"{k}={v}" for k, v in counts.items()),
          file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK if counts["violated"] == 0 else EXIT_VIOLATED


def cmd_nodes(args) -> int:
    rule = jacobi_rule(args.alpha, args.eta, args.n)
    out = ["node,weight"]
    out += [f"{t:.17g},{w:.17g}" for t, w in zip(rule.nodes, rule.weights)]
    print("\n".join(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fracineq",
                 description="Generalized Katugampola fractional integrals and "
                             "Chebyshev-type inequality checks.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="evaluate the operator on one function")
    _param_args(p)
    p.add_argument("--function", type=_function, required=True, help="function spec, e.g. pow:2")
    _quad_args(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("reduce", help="evaluate a classical reduction and compare with the "
                                      "power-function closed form")
    p.add_argument("--kind", required=True, help="one of: " + ", ".join(KINDS))
    p.add_argument("--alpha", type=_positive, required=True)
    p.add_argument("--rho", type=_positive, default=None)
    p.add_argument("--eta", type=_eta, default=None)
    p.add_argument("--x", type=_positive, default=1.0)
    p.add_argument("--function", type=_function, default=parse_integrand("const:1"))
    p.add_argument("--sigma-oracle", type=_real, default=None,
                   help="exponent for the closed-form oracle (default: read from pow:<p>)")
    _quad_args(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="check inequalities for one tuple or a sweep file")
    p.add_argument("--sweep", default=None,
                   help="SweepSpec JSON path, or 'standard' for the shipped sweep")
    p.add_argument("--out", default=None, help="report path (default: stdout)")
    p.add_argument("--theorem", choices=ineq.THEOREM_IDS, default=None)
    p.add_argument("--alpha", type=_positive, default=None)
    p.add_argument("--beta", type=_real, default=0.0)
    p.add_argument("--delta", type=_positive, default=None)
    p.add_argument("--lambda", dest="lambda_", type=_real, default=None)
    p.add_argument("--rho", type=_positive, default=1.0)
    p.add_argument("--k", type=_real, default=0.0)
    p.add_argument("--eta", type=_eta, default=0.0)
    p.add_argument("--x", type=_positive, default=None)
    p.add_argument("--phi", type=_function, default=None)
    p.add_argument("--psi", type=_function, default=None)
    p.add_argument("--weights", nargs="+", default=None,
                   help="weight specs in theorem order: (s v), (f g h), h or g")
    p.add_argument("--holder-s", type=_holder, default=2.0)
    p.add_argument("--t-norm", type=_positive, default=None)
    p.add_argument("--tol", type=_positive, default=None,
                   help="relative verdict tolerance (default 1e-8)")
    _quad_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("nodes", help="print a Gauss-Jacobi rule as CSV")
    p.add_argument("--alpha", type=_positive, required=True)
    p.add_argument("--eta", type=_eta, required=True)
    p.add_argument("--n", type=_count, required=True)
    p.set_defaults(func=cmd_nodes)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FracIneqError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
