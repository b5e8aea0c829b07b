import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from fracineq import (DomainError, QuadratureConfig, QuadratureWarning, integrate_double,
                      integrate_single, jacobi_rule)
from fracineq.quadrature import ENV_TOL, composite_rule

GRID = [(a, e) for a in (0.5, 1.0, 2.5) for e in (-0.5, 0.0, 1.0)]


def test_gauss_legendre_two_point():
    r = jacobi_rule(1, 0, 2)
    h = 1 / (2 * math.sqrt(3))
    np.testing.assert_allclose(r.nodes, [0.5 - h, 0.5 + h], rtol=1e-15)
    np.testing.assert_allclose(r.weights, [0.5, 0.5], rtol=1e-15)
    assert r.n == 2


@pytest.mark.parametrize("n", [2, 3, 7, 40, 200])
def test_legendre_weights_sum_to_one(n):
    assert jacobi_rule(1, 0, n).weights.sum() == pytest.approx(1.0, rel=1e-13)


def test_weight_sum_example():
    assert jacobi_rule(0.5, 0.5, 8).weights.sum() == pytest.approx(math.pi / 2, rel=1e-12)


@pytest.mark.parametrize("alpha, eta", GRID)
@pytest.mark.parametrize("n", [2, 5, 16, 64])
def test_rule_invariants(alpha, eta, n):
    r = jacobi_rule(alpha, eta, n)
    assert np.all(np.diff(r.nodes) > 0)
    assert r.nodes[0] > 0 and r.nodes[-1] < 1
    assert np.all(r.weights > 0)
    assert r.weights.sum() == pytest.approx(oracles.beta(eta + 1, alpha), rel=1e-12)


@pytest.mark.parametrize("alpha, eta", GRID)
@pytest.mark.parametrize("n", [3, 8, 20])
def test_monomial_exactness(alpha, eta, n):
    r = jacobi_rule(alpha, eta, n)
    for m in range(2 * n - 2):
        ref = oracles.beta(eta + m + 1, alpha)
        assert r.integrate(lambda t: t ** m) == pytest.approx(ref, rel=1e-11), m


@given(st.floats(0.05, 6), st.floats(-0.95, 6), st.integers(2, 30), st.data())
def test_monomial_exactness_random(alpha, eta, n, data):
    m = data.draw(st.integers(0, 2 * n - 3))
    r = jacobi_rule(alpha, eta, n)
    assert r.integrate(lambda t: t ** m) == pytest.approx(oracles.beta(eta + m + 1, alpha),
                                                          rel=1e-11)


@pytest.mark.parametrize("bad", [dict(alpha=0, eta=0, n=4), dict(alpha=1, eta=-1, n=4),
                                 dict(alpha=1, eta=0, n=0), dict(alpha=1, eta=0, n=2.5)])
def test_rule_domain(bad):
    with pytest.raises(DomainError):
        jacobi_rule(**bad)


def test_rules_are_immutable():
    r = jacobi_rule(1.5, 0.2, 10)
    with pytest.raises(ValueError):
        r.nodes[0] = 0.5


def test_integrate_single_examples():
    assert integrate_single(1, 0, lambda t: np.ones_like(t)).value == pytest.approx(1.0, rel=1e-14)
    assert integrate_single(1, 0, lambda t: t ** 2).value == pytest.approx(1 / 3, rel=1e-14)
    # B(2, 1/2) = 4/3
    v, n_used, est = integrate_single(0.5, 0, lambda t: t)
    assert v == pytest.approx(oracles.beta(2, 0.5), rel=1e-13)
    assert v == pytest.approx(4 / 3, rel=1e-13)
    assert n_used >= 16 and est >= 0


@pytest.mark.parametrize("alpha, eta", GRID)
@pytest.mark.parametrize("sigma", [0.05, 0.5, 1 / 3, 2.5])
def test_integrate_single_fractional_powers(alpha, eta, sigma):
    # t**sigma is not smooth at 0; the graded panels must still reach ~1e-13
    res = integrate_single(alpha, eta, lambda t: t ** sigma)
    assert res.converged
    assert res.value == pytest.approx(oracles.beta(eta + sigma + 1, alpha), rel=1e-12)


def test_endpoints_never_sampled():
    seen = []

    def f(t):
        seen.append(t.copy())
        return np.cos(t)

    integrate_single(0.3, -0.7, f)
    t = np.concatenate(seen)
    assert np.all(t > 0) and np.all(t < 1)


def test_non_convergence_is_flagged():
    cfg = QuadratureConfig(n_start=2, n_max=4, rel_tol=1e-14)
    with pytest.warns(QuadratureWarning):
        res = integrate_single(1, 0, lambda t: np.sin(200 * t), cfg)
    assert not res.converged
    assert math.isfinite(res.value)


def test_est_err_decreases_over_last_doublings():
    f = lambda t: np.exp(np.sqrt(t)) * np.cos(3 * t)  # noqa: E731
    errs = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", QuadratureWarning)
        for n_max in (8, 16, 32):
            cfg = QuadratureConfig(n_start=2, n_max=n_max, rel_tol=1e-300)
            errs.append(integrate_single(0.7, 0.4, f, cfg).est_err)
    assert errs[2] <= errs[1] <= errs[0]


def test_config_validation():
    with pytest.raises(DomainError):
        QuadratureConfig(n_start=1)
    with pytest.raises(DomainError):
        QuadratureConfig(n_start=32, n_max=16)
    with pytest.raises(DomainError):
        QuadratureConfig(rel_tol=0)


def test_config_from_env(monkeypatch):
    monkeypatch.setenv(ENV_TOL, "1e-6")
    assert QuadratureConfig.from_env().rel_tol == 1e-6
    monkeypatch.setenv(ENV_TOL, "abc")
    with pytest.raises(DomainError):
        QuadratureConfig.from_env()
    monkeypatch.delenv(ENV_TOL)
    assert QuadratureConfig.from_env().rel_tol == 1e-10


def test_composite_weights_sum_to_beta():
    for alpha, eta in GRID:
        r = composite_rule(alpha, eta, 16)
        assert r.weights.sum() == pytest.approx(oracles.beta(eta + 1, alpha), rel=1e-13)


def test_double_examples():
    one = integrate_double((1, 0), (1, 0), lambda t, u: np.ones(np.broadcast(t, u).shape))
    assert one.value == pytest.approx(1.0, rel=1e-13)
    kink = integrate_double((1, 0), (1, 0), lambda t, u: np.abs(t - u), diagonal_split=True)
    assert kink.converged
    assert kink.value == pytest.approx(1 / 3, rel=1e-12)
    sq = integrate_double((1, 0), (1, 0), lambda t, u: (t - u) ** 2)
    assert sq.value == pytest.approx(1 / 6, rel=1e-13)


def test_double_weighted_kink_against_closed_form():
    # weights t**eta (1-t)**(a-1) (1-u)**(d-1) u**eta, eta = 0, a = 1, d = 2:
    # int int (1-u) |t-u| = 1/6
    res = integrate_double((1, 0), (2, 0), lambda t, u: np.abs(t - u), diagonal_split=True)
    assert res.value == pytest.approx(1 / 6, rel=1e-12)


@pytest.mark.parametrize("alpha, eta", GRID)
def test_double_symmetry(alpha, eta):
    g = lambda t, u: np.exp(t * u) * (t + u)  # noqa: E731
    a = integrate_double((alpha, eta), (alpha, eta), g)
    b = integrate_double((alpha, eta), (alpha, eta), lambda t, u: g(u, t))
    assert a.value == pytest.approx(b.value, rel=1e-12)


@pytest.mark.parametrize("alpha, eta", GRID)
def test_split_consistency_for_smooth_g(alpha, eta):
    g = lambda t, u: np.cos(t - 2 * u) + t * u  # noqa: E731
    a = integrate_double((alpha, eta), (1.5, eta), g, diagonal_split=False)
    b = integrate_double((alpha, eta), (1.5, eta), g, diagonal_split=True)
    assert a.value == pytest.approx(b.value, rel=1e-9)


def test_split_is_needed_for_kinks():
    # without the split |t - u| converges slowly; with it the value is exact
    cfg = QuadratureConfig(n_start=16, n_max=32, rel_tol=1e-10)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", QuadratureWarning)
        plain = integrate_double((1, 0), (1, 0), lambda t, u: np.abs(t - u), cfg)
    split = integrate_double((1, 0), (1, 0), lambda t, u: np.abs(t - u), cfg, diagonal_split=True)
    assert abs(split.value - 1 / 3) < 1e-13
    assert abs(plain.value - 1 / 3) > abs(split.value - 1 / 3)


def _kink_ref(eta, sigma):
    # int int t**eta u**eta |t**s - u**s| = 2 s / ((eta+1)(eta+s+1)(2 eta+s+2))
    return 2 * sigma / ((eta + 1) * (eta + sigma + 1) * (2 * eta + sigma + 2))


@given(st.sampled_from([-0.5, 0.0, 1.0]), st.floats(0.05, 3.0))
def test_double_kink_with_singular_weights(eta, sigma):
    res = integrate_double((1.0, eta), (1.0, eta),
                           lambda t, u: np.abs(t ** sigma - u ** sigma), diagonal_split=True)
    assert res.converged
    assert res.value == pytest.approx(_kink_ref(eta, sigma), rel=1e-11)


@pytest.mark.parametrize("sigma", [0.05, 0.1, 0.5, 2.0])
def test_near_minus_one_is_accurate_or_flagged(sigma):
    # mass near 0 decays like eps**(eta+1); when the rule cannot resolve it the
    # result must say so rather than report a wrong value as converged
    eta = -0.9
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", QuadratureWarning)
        res = integrate_double((1.0, eta), (1.0, eta),
                               lambda t, u: np.abs(t ** sigma - u ** sigma), diagonal_split=True)
        one = integrate_single(1.0, eta, lambda t: t ** sigma)
    ref = _kink_ref(eta, sigma)
    if res.converged:
        assert res.value == pytest.approx(ref, rel=1e-11)
    else:
        assert abs(res.value - ref) <= 10 * res.est_err + 1e-11 * ref
    if one.converged:
        assert one.value == pytest.approx(oracles.beta(eta + sigma + 1, 1.0), rel=1e-12)
    if sigma >= 0.5:
        assert res.converged and one.converged


def test_double_kink_top_corner():
    # int int (1-t)(1-u)|t-u| = 1/15, and with (1-t)**-0.5 (1-u)**-0.5
    # the value is 2 int_0^1 T**-0.5 int_0^T U**-0.5 (T-U) dU dT = 4/3
    a = integrate_double((2, 0), (2, 0), lambda t, u: np.abs(t - u), diagonal_split=True)
    assert a.value == pytest.approx(1 / 15, rel=1e-12)
    b = integrate_double((0.5, 0), (0.5, 0), lambda t, u: np.abs(t - u), diagonal_split=True)
    assert b.value == pytest.approx(4 / 3, rel=1e-11)
