"""Compare the generalized chain at rho=1, k=eta=0 with the direct
Riemann-Liouville assembly, for a few functions and orders."""

import argparse

from fracineq import HolderPair, parse_integrand, reduce
from fracineq import inequalities as ineq

CASES = [("pow:1", "pow:1", "const:1"), ("exp:0.5", "pow:2", "pow:1"),
         ("log1p", "pow:1.5", "affine:1,1")]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, nargs="+", default=[0.5, 1.0, 2.5])
    ap.add_argument("--x", type=float, default=1.5)
    ap.add_argument("--holder-s", type=float, default=2.0)
    args = ap.parse_args()
    hp = HolderPair.conjugate(args.holder_s)

    for alpha in args.alpha:
        p = reduce("riemann_liouville", alpha)
        for phi, psi, h in CASES:
            f, g, w = (parse_integrand(s) for s in (phi, psi, h))
            gen = ineq.chain_t52(p, w, f, g, hp, args.x).chain
            rl = ineq.remark_rl(alpha, w, f, g, hp, args.x).chain
            err = max(abs(a - b) / max(abs(b), 1e-300) for a, b in zip(gen, rl))
            print(f"alpha={alpha:<4} {phi:>8} {psi:>8} h={h:<10} "
                  f"A={gen[0]:.10g} B={gen[1]:.10g} C={gen[2]:.10g}  max rel diff {err:.1e}")


if __name__ == "__main__":
    main()
