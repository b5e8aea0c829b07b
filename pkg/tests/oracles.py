"""Reference values computed without the package's quadrature.

Everything here uses mpmath or scipy.integrate.quad in the original tau
variable, so agreement with fracineq is a check of the substitution, the
Jacobi rules and the grading, not a restatement of them.
"""

import math

import mpmath
import numpy as np
from scipy import integrate

mpmath.mp.dps = 30


def gamma(z):
    return float(mpmath.gamma(z))


def beta(a, b):
    return float(mpmath.beta(a, b))


def lam(alpha, beta_, rho, k, eta, x):
    v = (mpmath.gamma(eta + 1) / mpmath.gamma(eta + alpha + 1)
         * mpmath.power(rho, -beta_) * mpmath.power(x, k + rho * (eta + alpha)))
    return float(v)


def power(alpha, beta_, rho, k, eta, sigma, x):
    e = eta + mpmath.mpf(sigma) / rho
    v = (mpmath.power(rho, -beta_) * mpmath.power(x, k + rho * (eta + alpha) + sigma)
         * mpmath.gamma(e + 1) / mpmath.gamma(e + alpha + 1))
    return float(v)


def tau_operator(alpha, beta_, rho, k, eta, f, x):
    """Operator in the tau variable with QUADPACK's algebraic-weight rule.

    (x**rho - tau**rho)**(alpha-1) = (x - tau)**(alpha-1) q(tau)**(alpha-1)
    with q smooth and positive on [0, x], so the weight
    tau**(rho(eta+1)-1) (x - tau)**(alpha-1) carries both singularities.
    """
    def q(t):
        if x - t <= 1e-14 * x:
            return rho * x ** (rho - 1.0)
        return (x ** rho - t ** rho) / (x - t)

    def body(t):
        return q(t) ** (alpha - 1.0) * f(t)

    val, _ = integrate.quad(body, 0.0, x, weight="alg", wvar=(rho * (eta + 1) - 1.0, alpha - 1.0),
                            epsabs=0.0, epsrel=1e-13, limit=400)
    return rho ** (1.0 - beta_) * x ** k / math.gamma(alpha) * val


def rl(alpha, f, x):
    """Riemann-Liouville integral, QUADPACK with weight (x - tau)**(alpha-1)."""
    val, _ = integrate.quad(f, 0.0, x, weight="alg", wvar=(0.0, alpha - 1.0),
                            epsabs=0.0, epsrel=1e-13, limit=400)
    return val / math.gamma(alpha)


def lp_norm(df, p, T):
    val, _ = integrate.quad(lambda t: abs(df(t)) ** p, 0.0, T, epsabs=0.0, epsrel=1e-13,
                            limit=400)
    return val ** (1.0 / p)


def rl_abs_double(alpha, delta, h, x):
    """int_0^x int_0^x (x-tau)**(alpha-1) (x-gam)**(delta-1) |tau-gam| h h, nested QUADPACK."""
    def inner(gam):
        # on tau < gam the kernel is regular except as gam -> x
        lo, _ = integrate.quad(lambda t: (x - t) ** (alpha - 1.0) * (gam - t) * h(t), 0.0, gam,
                               epsabs=0.0, epsrel=1e-12, limit=400)
        if gam >= x:
            return lo
        hi, _ = integrate.quad(lambda t: (t - gam) * h(t), gam, x, weight="alg",
                               wvar=(0.0, alpha - 1.0), epsabs=0.0, epsrel=1e-12, limit=400)
        return lo + hi

    val, _ = integrate.quad(lambda g: h(g) * inner(g), 0.0, x, weight="alg",
                            wvar=(0.0, delta - 1.0), epsabs=0.0, epsrel=1e-11, limit=400)
    return val


def remark_chain(alpha, h, phi, psi, dphi, dpsi, s, x):
    """Three expressions of the Riemann-Liouville derivative-norm chain."""
    v = s / (s - 1.0)
    Ih = rl(alpha, h, x)
    A = 2.0 * abs(Ih * rl(alpha, lambda t: h(t) * phi(t) * psi(t), x)
                  - rl(alpha, lambda t: h(t) * phi(t), x) * rl(alpha, lambda t: h(t) * psi(t), x))
    n = lp_norm(dphi, s, x) * lp_norm(dpsi, v, x)
    B = n / math.gamma(alpha) ** 2 * rl_abs_double(alpha, alpha, h, x)
    C = n * x * Ih ** 2
    return A, B, C


def scalar(f):
    """Wrap a numpy-vectorised callable for scipy's scalar calls."""
    return lambda t: float(f(np.float64(t)))
