"""One check per acceptance criterion; each appends a PASS/FAIL line to the summary."""

import json
import subprocess
import sys
import time

import numpy as np
import pytest

import conftest
import oracles
from fracineq import (FractionalParams, HolderPair, certify_pair, jacobi_rule,
                      katugampola_integral, lambda_fn, parse_integrand, power_closed_form, reduce)
from fracineq import inequalities as ineq

P = parse_integrand
RL1 = reduce("riemann_liouville", 1.0)
RL2 = reduce("riemann_liouville", 2.0)


def record(name, ok, detail):
    conftest.ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, detail


def random_params(rng, shared=None):
    rho, k, eta = shared or (rng.uniform(0.5, 2.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 1.5))
    return FractionalParams(rng.uniform(0.3, 2.5), rng.uniform(-0.5, 1.5), rho, k, eta)


def rel(a, b):
    return abs(a - b) / abs(b) if b != 0 else abs(a)


@pytest.fixture(scope="session")
def sweep(tmp_path_factory):
    """Two CLI runs of the standard sweep; returns (reports, texts, seconds, exit codes)."""
    d = tmp_path_factory.mktemp("sweep")
    texts, secs, codes, summaries = [], [], [], []
    for i in range(2):
        out = d / f"run{i}.json"
        t0 = time.perf_counter()
        r = subprocess.run([sys.executable, "-m", "fracineq", "verify", "--sweep", "standard",
                            "--out", str(out)], capture_output=True, text=True, check=False)
        secs.append(time.perf_counter() - t0)
        codes.append(r.returncode)
        summaries.append(r.stdout.strip())
        texts.append(out.read_bytes())
    return json.loads(texts[0]), texts, secs, codes, summaries


def by_id(reports, tid):
    out = [r for r in reports if r["theorem_id"] == tid]
    assert out, f"no {tid} reports in the sweep"
    return out


def test_operator_oracle_suite():
    rng = np.random.default_rng(1001)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        p = random_params(rng)
        sigma, x = rng.uniform(0, 4), rng.uniform(0.5, 3)
        v = katugampola_integral(p, P(f"pow:{sigma!r}"), x)
        worst = max(worst, rel(v, power_closed_form(p, sigma, x)))
    dt = time.perf_counter() - t0
    record("operator oracle (200 tuples)", worst <= 1e-9 and dt < 10,
           f"max rel err {worst:.2e} (tol 1e-9), {dt:.2f} s (limit 10 s)")


def test_lambda_identity():
    rng = np.random.default_rng(1002)
    worst = 0.0
    for _ in range(100):
        p, x = random_params(rng), rng.uniform(0.5, 3)
        v = katugampola_integral(p, P("const:1"), x)
        worst = max(worst, rel(v, lambda_fn(p, x)),
                    rel(lambda_fn(p, x), oracles.lam(p.alpha, p.beta, p.rho, p.k, p.eta, x)))
    record("Lambda identity (100 tuples)", worst <= 1e-10, f"max rel err {worst:.2e} (tol 1e-10)")


def test_t31_hand_value_and_sweep(sweep):
    reports = sweep[0]
    g = ineq.gap_t31(RL1, certify_pair(P("pow:1"), P("pow:1"), 1.0), 1.0).gap
    hand = abs(g - 1 / 12)
    bad = [r for r in by_id(reports, "T3.1")
           if r["verdict"] != "holds" or not r["converged"]
           or (r["functions"] != ["pow:1", "affine:1,-1"] and r["gap"] < -r["tol"])]
    n = len(by_id(reports, "T3.1"))
    ok = hand <= 1e-10 and not bad and all(
        r["verdict"] != "violated" for r in reports)
    record("T3.1 hand value + standard sweep", ok,
           f"|gap - 1/12| = {hand:.1e} (tol 1e-10); {n} T3.1 reports, {len(bad)} failing; "
           f"violations in sweep: {sum(r['verdict'] == 'violated' for r in reports)}")


def test_asynchrony_reversal(sweep):
    reports = sweep[0]
    pr = certify_pair(P("pow:1"), P("affine:1,-1"), 1.0)
    g = ineq.gap_t31(RL1, pr, 1.0).gap
    hand = abs(g + 1 / 12)
    rev = [r for r in by_id(reports, "T3.1") if r["functions"] == ["pow:1", "affine:1,-1"]]
    bad = [r for r in rev if not (r["gap"] <= r["tol"] and r["verdict"] == "holds")]
    record("asynchrony reversal", pr.certified == "asynchronous" and hand <= 1e-10 and rev
           and not bad, f"|gap + 1/12| = {hand:.1e} (tol 1e-10); "
           f"{len(rev)} reversed sweep reports, {len(bad)} with gap > tol")


def test_t32_hand_value():
    g = ineq.gap_t32(RL1, RL2, certify_pair(P("pow:1"), P("pow:1"), 1.0), 1.0).gap
    err = abs(g - 1 / 12)
    record("T3.2 hand value", err <= 1e-9, f"|gap - 1/12| = {err:.1e} (tol 1e-9)")


def test_degeneracy_lattice():
    rng = np.random.default_rng(1003)
    worst = {}
    one = P("const:1")
    s_w, v_w = P("pow:0.5"), P("affine:1,2")
    w3 = (P("pow:0.5"), P("exp:-1"), P("affine:1,1"))

    def upd(name, a, b):
        worst[name] = max(worst.get(name, 0.0), rel(a, b))

    for _ in range(50):
        shared = (rng.uniform(0.5, 2.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 1.5))
        p, q, x = random_params(rng, shared), random_params(rng, shared), rng.uniform(0.5, 2.5)
        pr = certify_pair(P("exp:0.5"), P("pow:1.5"), x)
        lam = lambda_fn(p, x)
        g31 = ineq.gap_t31(p, pr, x).gap
        upd("T3.2(p,p)=2L*T3.1", ineq.gap_t32(p, p, pr, x).gap, 2 * lam * g31)
        upd("L4.1(1,1)=2L*T3.1", ineq.gap_l41(p, pr, one, one, x).gap, 2 * lam * g31)
        upd("L4.3(p,p)=L4.1", ineq.gap_l43(p, p, pr, s_w, v_w, x).gap,
            ineq.gap_l41(p, pr, s_w, v_w, x).gap)
        upd("T4.4(p,p)=T4.2", ineq.gap_t44(p, p, pr, *w3, x).gap, ineq.gap_t42(p, pr, *w3, x).gap)
        g32 = ineq.gap_t32(p, q, pr, x).gap
        upd("L4.3(1,1)=T3.2", ineq.gap_l43(p, q, pr, one, one, x).gap, g32)
        upd("T4.2(1,1,1)=6L^2*T3.1", ineq.gap_t42(p, pr, one, one, one, x).gap, 6 * lam ** 2 * g31)
        upd("T4.4(1,1,1)=3L1*T3.2", ineq.gap_t44(p, q, pr, one, one, one, x).gap, 3 * lam * g32)
    m = max(worst.values())
    record("degeneracy lattice (50 tuples each)", m <= 1e-9,
           f"max rel err {m:.2e} (tol 1e-9) over {len(worst)} relations")


def test_l51_identity(sweep):
    res = ineq.identity_l51(RL1, P("const:1"), P("pow:1"), P("pow:1"), 1.0)
    hand = max(abs(res.lhs - 1 / 6), abs(res.rhs - 1 / 6))
    reps = by_id(sweep[0], "L5.1-identity")
    worst = max(abs(r["operands"]["lhs"] - r["operands"]["rhs"])
                / max(1.0, abs(r["operands"]["lhs"]), abs(r["operands"]["rhs"])) for r in reps)
    ok = hand <= 1e-9 and worst <= 1e-8 and all(r["verdict"] == "holds" for r in reps)
    record("L5.1 identity (factor 2)", ok,
           f"hand lhs={res.lhs:.12f} rhs={res.rhs:.12f} (1/6, tol 1e-9); "
           f"{len(reps)} sweep reports, max scaled residual {worst:.1e} (tol 1e-8)")


def _chain_ok(reps):
    bad = 0
    for r in reps:
        c = r["chain"]
        if r["verdict"] != "holds" or any(a > b + r["tol"] for a, b in zip(c[:-1], c[1:])):
            bad += 1
    return bad


def test_t52_chain(sweep):
    r = ineq.chain_t52(RL1, P("const:1"), P("pow:1"), P("pow:1"), HolderPair(2, 2), 1.0, 1.0)
    hand = float(np.max(np.abs(np.array(r.chain) - [1 / 6, 1 / 3, 1.0])))
    reps = by_id(sweep[0], "T5.2")
    bad = _chain_ok(reps)
    record("T5.2 chain", hand <= 1e-9 and bad == 0,
           f"hand chain {[round(v, 12) for v in r.chain]} vs (1/6, 1/3, 1), err {hand:.1e}; "
           f"{len(reps)} sweep chains, {bad} not non-decreasing")


def test_t53_chain(sweep):
    r = ineq.chain_t53(RL1, RL2, P("const:1"), P("pow:1"), P("pow:1"), HolderPair(2, 2), 1.0, 1.0)
    hand = abs(r.operands["A"] - 1 / 12)
    reps = by_id(sweep[0], "T5.3")
    bad = _chain_ok(reps)
    record("T5.3 chain", hand <= 1e-9 and bad == 0,
           f"|A - 1/12| = {hand:.1e} (tol 1e-9); {len(reps)} sweep chains, "
           f"{bad} not non-decreasing")


def test_remark_reduction():
    rng = np.random.default_rng(1004)
    fns = ["pow:1", "pow:2", "exp:0.5", "log1p", "pow:1.5", "exp:-0.3"]
    hs = ["const:1", "pow:1", "affine:1,1", "exp:0.3"]
    worst = 0.0
    for _ in range(20):
        alpha, x, s = rng.uniform(0.5, 2.5), rng.uniform(0.5, 2.0), rng.uniform(1.5, 3.0)
        f, g, h = P(rng.choice(fns)), P(rng.choice(fns)), P(rng.choice(hs))
        hp = HolderPair.conjugate(s)
        ref = oracles.remark_chain(alpha, oracles.scalar(h), oracles.scalar(f), oracles.scalar(g),
                                   oracles.scalar(f.derivative), oracles.scalar(g.derivative),
                                   s, x)
        got = ineq.chain_t52(reduce("riemann_liouville", alpha), h, f, g, hp, x).chain
        worst = max(worst, max(rel(a, b) for a, b in zip(got, ref)))
    record("remark reduction (20 tuples)", worst <= 1e-9, f"max rel err {worst:.2e} (tol 1e-9)")


def test_quadrature_exactness():
    worst, count = 0.0, 0
    for alpha in (0.5, 1.0, 2.5):
        for eta in (-0.5, 0.0, 1.0):
            for n in (2, 3, 5, 10, 20, 40):
                r = jacobi_rule(alpha, eta, n)
                for m in range(2 * n - 2):
                    ref = oracles.beta(eta + m + 1, alpha)
                    worst = max(worst, rel(float(r.weights @ r.nodes ** m), ref))
                    count += 1
    record("quadrature exactness", worst <= 1e-11,
           f"{count} (alpha, eta, n, degree <= 2n-3) cases, max rel err {worst:.2e} (tol 1e-11)")


def test_cli_determinism(sweep):
    reports, texts, secs, codes, summaries = sweep
    same = texts[0] == texts[1]
    violated = sum(r["verdict"] == "violated" for r in reports)
    ok = same and violated == 0 and codes == [0, 0] and max(secs) < 60
    record("CLI determinism", ok,
           f"byte-identical={same}, {len(reports)} reports, violated={violated}, "
           f"exit codes {codes}, runs {secs[0]:.1f} s / {secs[1]:.1f} s (limit 60 s each); "
           f"{summaries[0]}")
