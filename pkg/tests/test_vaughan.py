import math

import numpy as np
import pytest

from beattylab import arith, vaughan
from beattylab.cfrac import convergents, expand
from beattylab.exact import GOLDEN, SQRT2, from_q2, rational
from conftest import random_surd


def reciprocal(spec):
    return from_q2(spec.to_q2().inverse())


@pytest.fixture(scope="module")
def golden_expsum_params():
    cs = convergents(expand(GOLDEN, 40), 12)
    conv = cs[7]  # p = 34, q = 21
    return vaughan.ExpSumParams(reciprocal(GOLDEN), 0.0, 0.25, 5000, conv.q, conv.p, 0.5)


def test_chi_delta_examples():
    assert vaughan.chi_delta(0.1, 0.25) == 1
    assert vaughan.chi_delta(-0.25, 0.25) == 0  # left end excluded
    assert vaughan.chi_delta(0.25, 0.25) == 1  # right end included
    assert vaughan.chi_delta(1.1, 0.25) == 1  # periodicity
    with pytest.raises(ValueError):
        vaughan.chi_delta(0.1, 0.5)


def test_exp_sum_lambda_values():
    z = vaughan.exp_sum_lambda(rational(0), 10)
    assert z.real == pytest.approx(arith.chebyshev(10).psi, abs=1e-12)
    assert z.imag == pytest.approx(0.0, abs=1e-12)
    # frequency 1/2: alternating signs over prime powers up to 10
    z2 = vaughan.exp_sum_lambda(rational(1, 2), 10)
    expected = 3 * math.log(2) - 2 * math.log(3) - math.log(5) - math.log(7)
    assert z2.real == pytest.approx(expected, abs=1e-12)
    # triangle inequality
    z3 = vaughan.exp_sum_lambda(SQRT2, 2000, 3)
    assert abs(z3) <= arith.chebyshev(2000).psi + 1e-9


def test_exp_sum_against_high_precision_oracle():
    # independent 50-digit evaluation of the same sum
    import mpmath as mp

    from beattylab.arith import mangoldt_support

    mp.mp.dps = 50

    def oracle(alpha_mp, N, h):
        ns, ws = mangoldt_support(N)
        s = mp.mpc(0)
        for n, w in zip(ns.tolist(), ws.tolist()):
            s += mp.e ** (2j * mp.pi * mp.frac(alpha_mp * h * n)) * w
        return complex(s)

    cases = [
        (reciprocal(GOLDEN), 2 / (1 + mp.sqrt(5)), 2000, 1),
        (from_q2(SQRT2.to_q2() / 2), mp.sqrt(2) / 2, 5000, 3),
    ]
    for spec, amp, n, h in cases:
        assert abs(vaughan.exp_sum_lambda(spec, n, h) - oracle(amp, n, h)) < 1e-8


def test_sandwich_dense_grid_spot():
    sw = vaughan.construct_sandwich(0.07, 63)
    ys = np.linspace(-0.5, 0.5, 1_000_001)
    t = ys % 1.0
    t = np.where(t > 0.5, t - 1.0, t)
    chi = ((t > -0.07) & (t <= 0.07)).astype(float)
    assert np.all(sw.evaluate(ys, "-") <= chi + 1e-10)
    assert np.all(chi <= sw.evaluate(ys, "+") + 1e-10)


def test_exp_sum_phase_folding(rng):
    # folding the multiplier into the frequency leaves the sum unchanged
    for _ in range(6):
        alpha = random_surd(rng)
        h = int(rng.integers(2, 9))
        n = int(rng.integers(100, 1500))
        fa = reciprocal(alpha)
        z1 = vaughan.exp_sum_lambda(fa, n, h)
        folded = fa.to_q2() * h
        folded = folded - folded.floor()
        z2 = vaughan.exp_sum_lambda(from_q2(folded), n, 1)
        assert abs(z1 - z2) < 1e-9 * max(1.0, abs(z1))


def test_vaughan_split_hand_cases():
    s = vaughan.vaughan_split(rational(0), 1, 4, u_override=1)
    assert s.s1 == pytest.approx(0.0)
    assert s.s2 == pytest.approx(0.0)
    assert s.s3.real == pytest.approx(math.log(24), abs=1e-12)
    assert s.s4.real == pytest.approx(math.log(2), abs=1e-12)
    assert s.direct.real == pytest.approx(2 * math.log(2) + math.log(3), abs=1e-12)
    assert s.defect <= 1e-12
    s2 = vaughan.vaughan_split(rational(0), 1, 2, u_override=1)
    assert s2.s3.real == pytest.approx(math.log(2), abs=1e-12)
    assert abs(s2.s1) == abs(s2.s2) == abs(s2.s4) == 0.0
    assert s2.defect <= 1e-12


def test_vaughan_split_default_cutoff_identity():
    sp = vaughan.vaughan_split(from_q2(SQRT2.to_q2() / 2), 3, 1000)
    assert sp.u == pytest.approx(1000**0.4 * 3 ** (-0.2), rel=1e-12)
    assert sp.defect <= 1e-7 * max(1.0, abs(sp.direct))


def test_vaughan_split_random_cases(rng):
    for _ in range(50):
        alpha = random_surd(rng)
        fa = reciprocal(alpha)
        n = int(rng.integers(50, 5000))
        j = int(rng.integers(1, 6))
        sp = vaughan.vaughan_split(fa, j, n)
        tol = 1e-6 * max(1.0, arith.chebyshev(n).psi)
        assert sp.defect <= tol


def test_sandwich_coefficients_and_grid(rng):
    for _ in range(20):
        delta = float(rng.uniform(0.02, 0.45))
        L = int(rng.integers(2, 64))
        sw = vaughan.construct_sandwich(delta, L)
        assert sw.c0_plus == pytest.approx(2 * delta + 1 / (L + 1), rel=1e-15)
        assert sw.c0_minus == pytest.approx(2 * delta - 1 / (L + 1), rel=1e-15)
        for l in range(1, L + 1):
            cap = sw.coefficient_bound(l)
            assert abs(sw.c_plus[l - 1]) <= cap
            assert abs(sw.c_minus[l - 1]) <= cap
        ys = np.linspace(-0.5, 0.5, 10_001)
        ys = np.concatenate([ys, [delta - 1e-9, delta + 1e-9, -delta - 1e-9, -delta + 1e-9]])
        chi = np.array([vaughan.chi_delta(float(y), delta) for y in ys])
        up = sw.evaluate(ys, "+")
        dn = sw.evaluate(ys, "-")
        assert np.all(dn <= chi + 1e-12)
        assert np.all(chi <= up + 1e-12)


def test_sandwich_mean_value():
    sw = vaughan.construct_sandwich(0.25, 16)
    # zeroth coefficient is the mean of chi^+
    ys = np.linspace(0, 1, 200_001)[:-1]
    mean = float(np.mean(sw.evaluate(ys, "+")))
    assert mean == pytest.approx(sw.c0_plus, abs=1e-9)


def test_lemma6_records(golden_expsum_params):
    r1, r2 = vaughan.check_lemma6(100, 100, 0.3, golden_expsum_params)
    assert r1.passed and r2.passed
    with pytest.raises(ValueError):
        vaughan.check_lemma6(0.5, 100, 0.3, golden_expsum_params)


def test_lemma7_records():
    cs = convergents(expand(SQRT2, 30), 10)
    pr = vaughan.ExpSumParams(reciprocal(SQRT2), 0.0, 0.25, 5000, cs[5].q, cs[5].p, 0.5)
    r1, r2 = vaughan.check_lemma7(200, 200, pr, coeff_seed=3)
    assert r1.passed and r2.passed
    assert r1.params["seed"] == 3


def test_dyadic_lemma(golden_expsum_params):
    rec = vaughan.check_dyadic_lemma(4, 7, 30, 5000, golden_expsum_params)
    assert rec.passed
    assert rec.rhs / max(rec.lhs, 1e-9) > 1e3
    with pytest.raises(vaughan.PreconditionViolated):
        vaughan.check_dyadic_lemma(4, 8, 30, 5000, golden_expsum_params)
    with pytest.raises(vaughan.PreconditionViolated):
        vaughan.check_dyadic_lemma(4, 7, 3, 5000, golden_expsum_params)
    # delta = 0 admitted: the scale log(Nq/delta) degenerates to +inf
    p0 = vaughan.ExpSumParams(
        golden_expsum_params.frak_a, 0.0, 0.0, 5000,
        golden_expsum_params.a, golden_expsum_params.q, 0.5,
    )
    rec0 = vaughan.check_dyadic_lemma(4, 7, 30, 5000, p0)
    assert rec0.passed and math.isinf(rec0.rhs)


def test_s_of_h(golden_expsum_params):
    rec = vaughan.s_of_h(golden_expsum_params, 8)
    assert rec.passed
    # S is a sum of moduli, hence monotone in H
    vals = [
        math.fsum(vaughan.abs_exp_sums(golden_expsum_params, h).tolist()) for h in (1, 2, 4, 8)
    ]
    assert vals == sorted(vals)
    # H = 1 reduces to a single modulus
    assert vals[0] == pytest.approx(
        abs(vaughan.exp_sum_lambda(golden_expsum_params.frak_a, 5000, 1)), abs=1e-9
    )


def test_partial_summation(golden_expsum_params):
    pr = vaughan.ExpSumParams(
        golden_expsum_params.frak_a, 0.0, 0.25, 3000,
        golden_expsum_params.a, golden_expsum_params.q, 0.5,
    )
    rec = vaughan.partial_summation_bound(pr, 32)
    assert rec.passed
    assert rec.margin >= 0.0
    # varpi = 3/(4 delta + 2/(L+1)) sits strictly below 3/(4 delta) and
    # approaches it as L grows
    assert rec.params["varpi"] == pytest.approx(3 / (4 * 0.25 + 2 / 33), rel=1e-12)
    assert rec.params["varpi"] < 3 / (4 * 0.25)
    big = vaughan.partial_summation_bound(pr, 400)
    assert big.params["varpi"] > rec.params["varpi"]
    # degenerate L = 1: empty integral, genuine positive margin
    rec1 = vaughan.partial_summation_bound(pr, 1)
    assert rec1.passed and rec1.margin > 0


def test_partial_summation_zero_margin_is_identity(golden_expsum_params):
    # for varpi < L the rearrangement is an exact identity in rationals
    pr = vaughan.ExpSumParams(
        golden_expsum_params.frak_a, 0.0, 0.3, 800,
        golden_expsum_params.a, golden_expsum_params.q, 0.5,
    )
    rec = vaughan.partial_summation_bound(pr, 24)
    assert rec.passed
    assert rec.margin == pytest.approx(0.0, abs=1e-12)


def test_theorem3_golden():
    cs = convergents(expand(GOLDEN, 40), 12)
    pr = vaughan.beatty_exp_params(GOLDEN, rational(0), 10**5, 0.5, cs[7])
    rec = vaughan.check_theorem3(pr)
    assert rec.passed
    assert rec.params["ratio"] > 10
    assert rec.params["trivial_ok"]
    assert rec.params["delta"] == pytest.approx(1 / (2 * float(GOLDEN)), rel=1e-12)
    assert rec.params["dirichlet_exact"] is False


def test_theorem3_rational_frequency_edge():
    # frak_a exactly equal to a/q is admitted, flagged as the non-strict edge
    pr = vaughan.ExpSumParams(rational(1, 3), 0.1, 0.2, 2000, 1, 3, 0.5)
    assert pr.dirichlet_exact
    rec = vaughan.check_theorem3(pr)
    assert rec.params["dirichlet_exact"] is True
    assert rec.passed


def test_expsum_params_validation():
    with pytest.raises(ValueError):
        vaughan.ExpSumParams(rational(1, 2), 0.0, 0.25, 100, 2, 4, 0.5)  # gcd != 1
    with pytest.raises(ValueError):
        vaughan.ExpSumParams(rational(1, 2), 0.0, 0.7, 100, 1, 2, 0.5)  # delta
    with pytest.raises(ValueError):
        # 1/3 is a bad approximation of sqrt(2)/2 at q = 3: |a0 - 1/3| > 1/9
        vaughan.ExpSumParams(from_q2(SQRT2.to_q2() / 2), 0.0, 0.25, 100, 1, 3, 0.5)
