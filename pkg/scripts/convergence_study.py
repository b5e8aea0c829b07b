"""Error against n for a single Gauss-Jacobi rule and for the graded composite rule.

The integrand t**sigma is what the operator sees for f = tau**(sigma*rho);
for non-integer sigma a single rule converges only algebraically.
"""

import argparse

from fracineq import beta_fn, jacobi_rule
from fracineq.quadrature import composite_rule


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=0.5)
    ap.add_argument("--eta", type=float, default=0.0)
    ap.add_argument("--sigma", type=float, nargs="+", default=[0.5, 1 / 3, 2.0])
    args = ap.parse_args()

    for sigma in args.sigma:
        exact = beta_fn(args.eta + sigma + 1, args.alpha)
        print(f"alpha={args.alpha} eta={args.eta} sigma={sigma:.4g}  exact={exact:.15g}")
        print(f"{'n':>6}{'plain err':>14}{'composite err':>16}{'points':>8}")
        for n in (4, 8, 16, 32, 64, 128):
            plain = jacobi_rule(args.alpha, args.eta, n)
            comp = composite_rule(args.alpha, args.eta, n)
            e1 = abs(plain.weights @ plain.nodes ** sigma - exact) / exact
            e2 = abs(comp.weights @ comp.nodes ** sigma - exact) / exact
            print(f"{n:>6}{e1:>14.2e}{e2:>16.2e}{comp.nodes.size:>8}")
        print()


if __name__ == "__main__":
    main()
