import math

import pytest

from beattylab import beatty
from beattylab.beatty import NotCoprime
from beattylab.exact import BeattyParams, GOLDEN, SQRT2, rational, surd
from conftest import random_surd


def test_element_examples(golden_params):
    assert beatty.element(2, golden_params) == 3
    assert beatty.element(1, BeattyParams(rational(15, 2), rational(3))) == 10
    assert beatty.element(1, BeattyParams(rational(3, 2))) == 1


def test_element_range_matches_exact_floor(rng):
    for _ in range(8):
        alpha = random_surd(rng)
        params = BeattyParams(alpha, rational(int(rng.integers(0, 5)), 2))
        got = beatty.element_range(params, 300)
        assert got == [beatty.element(n, params) for n in range(1, 301)]


def test_is_member_examples():
    p152 = BeattyParams(rational(15, 2), rational(3))
    assert beatty.is_member(10, p152)
    assert not beatty.is_member(11, p152)
    assert beatty.is_member(2, BeattyParams(SQRT2))


def test_membership_round_trip(golden_params, rng):
    params_list = [golden_params, BeattyParams(surd(1, 2, 1), rational(1, 2))]
    for params in params_list:
        for n in range(1, 10**4, 97):
            assert beatty.is_member(beatty.element(n, params), params)
    # non-members: integers strictly between consecutive elements
    elems = beatty.element_range(golden_params, 200)
    gaps = set(range(1, elems[-1])) - set(elems)
    for g in sorted(gaps)[:50]:
        assert not beatty.is_member(g, golden_params)


def test_least_prime_examples(golden_params):
    r = beatty.least_prime(golden_params, 100)
    assert (r.prime, r.index_n) == (3, 2)
    r2 = beatty.least_prime(BeattyParams(surd(40, 2, 10)), 100)
    assert (r2.prime, r2.index_n) == (37, 9)
    r3 = beatty.least_prime(BeattyParams(rational(15, 2), rational(3)), 10**5)
    assert r3.prime is None
    with pytest.raises(ValueError):
        beatty.least_prime(BeattyParams(rational(1, 2)), 100)


def test_least_prime_stable_under_limit_extension(rng):
    for _ in range(6):
        alpha = random_surd(rng, lo=1.1, hi=12.0)
        params = BeattyParams(alpha)
        r1 = beatty.least_prime(params, 10**3)
        r2 = beatty.least_prime(params, 10**4)
        if r1.prime is not None:
            assert (r2.prime, r2.index_n) == (r1.prime, r1.index_n)


def test_prime_count_density(golden_params):
    count, ratio = beatty.prime_count(golden_params, 10**5)
    assert abs(ratio - 1.0) < 0.05
    c2, ratio2 = beatty.prime_count(BeattyParams(surd(1, 2, 1)), 10**5)
    assert abs(ratio2 - 1.0) < 0.05
    c3, _ = beatty.prime_count(golden_params, 2)
    assert c3 in (0, 1)


def test_chi_membership_bridge(golden_params):
    rec = beatty.chi_membership_bridge(golden_params, 2000)
    assert rec.passed
    rec2 = beatty.chi_membership_bridge(BeattyParams(surd(1, 2, 1), rational(1, 2)), 2000)
    assert rec2.passed


def test_chi_membership_bridge_random_pairs(rng):
    # randomized surd (alpha, beta) pairs at N = 1e4
    for _ in range(20):
        alpha = random_surd(rng, lo=1.05, hi=20.0)
        beta = rational(int(rng.integers(0, 7)), int(rng.integers(1, 5)))
        rec = beatty.chi_membership_bridge(BeattyParams(alpha, beta), 10**4)
        assert rec.passed, rec.params


def test_chi_bridge_plus_form_detects_reflection():
    # with beta != 1/2 the plus form tests the reflected offset and must fail
    rec = beatty.chi_membership_bridge(
        BeattyParams(surd(1, 2, 1), rational(1, 4)), 500, plus_form=True
    )
    assert not rec.passed
    # at beta = 1/2 both forms coincide
    rec2 = beatty.chi_membership_bridge(
        BeattyParams(surd(1, 2, 1), rational(1, 2)), 500, plus_form=True
    )
    assert rec2.passed


def test_rational_decompose_examples():
    dec = beatty.rational_decompose(15, 2, rational(3))
    assert dec.offsets == [10, 18]
    assert not dec.has_prime_class()
    assert not dec.contains_any_prime()
    dec2 = beatty.rational_decompose(5, 2, rational(0))
    assert dec2.offsets == [2, 5]
    assert [c.is_prime_class for c in dec2.classes] == [True, False]
    # offset 5 = gcd class, but 5 itself is prime and sits in the class
    assert dec2.classes[1].offset_is_prime and dec2.classes[1].contains_prime
    dec3 = beatty.rational_decompose(3, 2, rational(0))
    assert dec3.offsets == [1, 3]
    assert [c.is_prime_class for c in dec3.classes] == [True, False]
    with pytest.raises(NotCoprime):
        beatty.rational_decompose(15, 3, rational(0))
    with pytest.raises(ValueError):
        beatty.rational_decompose(2, 3, rational(0))


def test_homogeneous_case_has_prime_class(rng):
    # b = a^{-1} mod q gives offset floor(a b / q) with gcd 1
    for _ in range(20):
        q = int(rng.integers(2, 12))
        a = int(rng.integers(q + 1, 60))
        if math.gcd(a, q) != 1:
            continue
        dec = beatty.rational_decompose(a, q, rational(0))
        assert dec.has_prime_class()
        b_inv = pow(a, -1, q) or q
        off = (a * b_inv) // q
        assert math.gcd(off, a) == 1


def test_rational_decomposition_reproduces_window(rng):
    # classes materialized to 10a terms reproduce the enumerated window
    for a, q, beta in ((15, 2, rational(3)), (7, 3, rational(1, 2)), (9, 4, rational(0))):
        dec = beatty.rational_decompose(a, q, beta)
        params = BeattyParams(rational(a, q), beta)
        window = beatty.element_range(params, 10 * q)
        from_classes = sorted(
            off + a * k for off in dec.offsets for k in range(11) if off + a * k <= window[-1]
        )
        assert from_classes == sorted(set(window))


def test_rational_decompose_surd_beta():
    # rational alpha with a surd offset stays exact: floor(7b/2 + sqrt(2))
    dec = beatty.rational_decompose(7, 2, surd(0, 2, 1))
    assert dec.offsets == [4, 8]
    p = BeattyParams(rational(7, 2), surd(0, 2, 1))
    assert beatty.element_range(p, 4) == [4, 8, 11, 15]
    assert beatty.is_member(4, p) and not beatty.is_member(5, p)


def test_rayleigh_partition():
    assert beatty.rayleigh_partition_check(GOLDEN, 10**4).passed
    assert beatty.rayleigh_partition_check(SQRT2, 10**4).passed
    assert beatty.rayleigh_partition_check(GOLDEN, 1).passed
    with pytest.raises(ValueError):
        beatty.rayleigh_partition_check(rational(3, 2), 100)


def test_consecutive_element_gaps(rng):
    for _ in range(5):
        alpha = random_surd(rng, lo=1.1, hi=9.0)
        params = BeattyParams(alpha)
        elems = beatty.element_range(params, 500)
        fa = math.floor(float(alpha))
        for a, b in zip(elems, elems[1:]):
            assert b - a in (fa, fa + 1)
