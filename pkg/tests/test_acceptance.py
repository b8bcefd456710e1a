"""Acceptance gate: one test per criterion, each printing a pass/fail line
with its runtime and asserting the stated tolerance and budget."""
import math
import time

import numpy as np
import pytest

from beattylab import arith, beatty, bounds, explicit, vaughan
from beattylab.cfrac import convergents, expand, find_m
from beattylab.exact import BeattyParams, GOLDEN, SQRT2, rational, surd
from conftest import random_surd

GOLDEN_LOG = math.log((1 + math.sqrt(5)) / 2)


def _finish(name: str, t0: float, budget: float) -> None:
    dt = time.perf_counter() - t0
    print(f"ACCEPTANCE {name}: PASS ({dt:.2f}s, budget {budget:.0f}s)")
    assert dt < budget, f"{name} exceeded its runtime budget: {dt:.2f}s"


def test_c01_rational_example_has_no_prime():
    t0 = time.perf_counter()
    dec = beatty.rational_decompose(15, 2, rational(3))
    assert dec.modulus == 15
    assert dec.offsets == [10, 18]
    assert not dec.has_prime_class()
    assert not dec.contains_any_prime()
    res = beatty.least_prime(BeattyParams(rational(15, 2), rational(3)), 10**6)
    assert res.prime is None and res.scanned_up_to == 10**6
    _finish("c01 rational 15/2 beta 3 prime-free", t0, 1.0)


def test_c02_surd_example_first_elements_prime_free():
    t0 = time.perf_counter()
    params = BeattyParams(surd(40, 2, 10))  # 4 + sqrt(2)/10
    first = beatty.element_range(params, 7)
    assert first == [4 * n for n in range(1, 8)]
    assert not any(arith.is_prime(e) for e in first)
    res = beatty.least_prime(params, 100)
    assert (res.prime, res.index_n) == (37, 9)
    _finish("c02 4+sqrt(2)/10 first 7 elements 4..28 prime-free", t0, 1.0)


def test_c03_divisor_pointwise_and_constants():
    t0 = time.perf_counter()
    rec = explicit.verify_divisor_pointwise(10**7)
    assert rec.passed and rec.params["violations"] == 0
    for eps, cap in ((0.5, 2.0), (0.25, 9.0), (1 / 6, 139.0)):
        val = math.exp(bounds.m_epsilon_finite_product(eps).log_value)
        assert val <= cap
    _finish("c03 d(x) <= min(139 x^1/6, 9 x^1/4, 2 x^1/2) to 1e7", t0, 60.0)


def test_c04_d3_square_running_bound():
    t0 = time.perf_counter()
    rec = explicit.verify_d3_square_sum(10**5)
    assert rec.passed
    assert rec.params["violation_count"] == 0
    _finish("c04 sum d3(x)^2 <= 3000 X log^8 X on [2, 1e5]", t0, 30.0)


def test_c05_d_square_running_bound_with_x2_flag():
    t0 = time.perf_counter()
    rec = explicit.verify_d_square_sum(10**5)
    assert not rec.passed  # the X = 2 boundary must be reported, not hidden
    assert rec.params["violations"] == [2]
    assert rec.params["violation_count"] == 1  # every X >= 3 holds
    assert rec.lhs == 5.0
    assert rec.rhs == pytest.approx(4.662345127845012, rel=1e-12)
    _finish("c05 sum d(x)^2 <= 7 X log^3 X on [2, 1e5], X=2 flagged", t0, 30.0)


def test_c06_chebyshev_inequalities_to_1e7():
    t0 = time.perf_counter()
    recs = {r.check_id: r for r in explicit.verify_rosser_schoenfeld(10**7)}
    psi = recs["rs_psi_upper"]
    theta = recs["rs_theta_lower"]
    assert psi.passed and psi.params["violations"] == 0
    assert theta.passed and theta.params["violations"] == 0
    _finish("c06 psi <= 1.03883 N and theta > N - N/log N to 1e7", t0, 60.0)


def test_c07_four_sum_identity():
    t0 = time.perf_counter()
    # hand-computed cases at u = 1
    s4 = vaughan.vaughan_split(rational(0), 1, 4, u_override=1)
    assert s4.s3.real == pytest.approx(math.log(24), abs=1e-12)
    assert s4.s4.real == pytest.approx(math.log(2), abs=1e-12)
    assert s4.defect <= 1e-6 * max(1.0, arith.chebyshev(4).psi)
    s2 = vaughan.vaughan_split(rational(0), 1, 2, u_override=1)
    assert s2.defect <= 1e-6
    rng = np.random.default_rng(20260808)
    for _ in range(50):
        alpha = random_surd(rng)
        fa = vaughan._from_q2(alpha.to_q2().inverse())
        n = int(rng.integers(50, 5001))
        j = int(rng.integers(1, 6))
        sp = vaughan.vaughan_split(fa, j, n)
        assert sp.defect <= 1e-6 * max(1.0, arith.chebyshev(n).psi)
    _finish("c07 four-sum identity, 2 hand + 50 seeded cases", t0, 30.0)


def test_c08_master_bound_margins():
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    done = 0
    while done < 10:
        alpha = random_surd(rng, lo=1.1, hi=30.0)
        n = int(rng.integers(10**4, 10**6 + 1))
        conv = None
        for c in convergents(expand(alpha, 50), 40):
            if c.p >= 30:
                conv = c
                break
        if conv is None:
            continue
        beta = rational(int(rng.integers(0, 3)))
        pr = vaughan.beatty_exp_params(alpha, beta, n, 0.5, conv)
        rec = vaughan.check_theorem3(pr)
        assert rec.passed
        assert rec.params["ratio"] >= 10.0
        assert rec.params["trivial_ok"]  # LHS <= 3 c0 N
        done += 1
    _finish("c08 master-bound margin >= 10 on 10 seeded sets", t0, 300.0)


def test_c09_sandwich_suite():
    t0 = time.perf_counter()
    rng = np.random.default_rng(9)
    for _ in range(20):
        delta = float(rng.uniform(0.02, 0.45))
        L = int(rng.integers(2, 64))
        sw = vaughan.construct_sandwich(delta, L)
        for l in range(1, L + 1):
            cap = sw.coefficient_bound(l)
            assert abs(sw.c_plus[l - 1]) <= cap
            assert abs(sw.c_minus[l - 1]) <= cap
        ys = np.linspace(-0.5, 0.5, 10_001)
        ys = np.concatenate([ys, [delta - 1e-9, delta + 1e-9, -delta - 1e-9, -delta + 1e-9]])
        chi = np.array([vaughan.chi_delta(float(y), delta) for y in ys])
        assert np.all(sw.evaluate(ys, "-") <= chi + 1e-12)
        assert np.all(chi <= sw.evaluate(ys, "+") + 1e-12)
    _finish("c09 indicator sandwich, 20 seeded (delta, L)", t0, 10.0)


def test_c10_equidistribution_golden():
    t0 = time.perf_counter()
    count, ratio = beatty.prime_count(BeattyParams(GOLDEN), 10**6)
    assert abs(ratio - 1.0) < 0.02
    _finish("c10 golden-ratio prime density within 2% at 1e6", t0, 30.0)


def test_c11_bound_pipeline_golden():
    t0 = time.perf_counter()
    params = BeattyParams(GOLDEN)
    cf = expand(GOLDEN, 64)
    m = find_m(params, cf)
    assert m == 7
    thresh = math.log(2 * float(GOLDEN)) ** 16 * float(GOLDEN) ** 2
    assert 34 <= thresh < 55
    assert thresh == pytest.approx(34.26, abs=0.05)
    eps = 0.02
    ell = bounds.ell_from_theorem2(eps)
    logm = math.exp(40.0) * math.log(2 / (math.e * math.log(2)))
    oracle = 3 + (9 / eps) * (
        41 + math.log(1 + 1 / eps)
        + float(np.logaddexp(math.log(3711), math.log(2 / 17**3) + logm))
    )
    assert abs(ell - oracle) <= 0.01 * oracle
    rep = bounds.theorem1_log_bound(params, eps)
    assert rep.log_p_provenance == "growth_rate_estimate"
    assert abs(rep.log_p_m_ell - (rep.m + rep.ell) * GOLDEN_LOG) <= 0.01 * (rep.m + rep.ell) * GOLDEN_LOG
    _finish("c11 golden pipeline: m = 7, ell rule, growth estimate", t0, 1.0)


def test_c12_continued_fraction_exactness():
    t0 = time.perf_counter()
    rng = np.random.default_rng(12)
    targets = [SQRT2, GOLDEN] + [random_surd(rng) for _ in range(20)]
    for k, alpha in enumerate(targets):
        terms = 1000 if k < 2 else 200
        cf = expand(alpha, terms + 2)
        cs = convergents(cf, terms)
        for n in range(1, terms + 1):
            a = cf.quotient(n)
            p_prev = cs[n - 2].p if n >= 2 else 1
            q_prev = cs[n - 2].q if n >= 2 else 0
            assert cs[n].p == a * cs[n - 1].p + p_prev
            assert cs[n].q == a * cs[n - 1].q + q_prev
            assert cs[n].p * cs[n - 1].q - cs[n - 1].p * cs[n].q == (-1) ** (n - 1)
    _finish("c12 recurrence and determinant exact on 1e3 terms", t0, 5.0)
