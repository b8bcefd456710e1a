import math

import pytest

from beattylab import arith, explicit


def test_divisor_pointwise_small_values():
    rec = explicit.verify_divisor_pointwise(10**4)
    assert rec.passed
    assert rec.params["violations"] == 0
    # spot values: d(1) = 1 <= 2, d(12) = 6 <= 9 * 12^(1/4)
    assert arith.divisor_table(12)[12] == 6
    assert 6 <= 9 * 12**0.25
    # tightest ratio at a highly-composite point, reported not asserted
    assert rec.params["tightest_ratio"] < 1.0
    tx = rec.params["tightest_x"]
    d = arith.divisor_table(tx)
    assert d[tx] == d.max()  # no smaller x has more divisors


def test_d3_square_sum_small_prefixes():
    rec = explicit.verify_d3_square_sum(10**4)
    assert rec.passed
    assert rec.params["violation_count"] == 0
    # X = 2 by hand: 1 + d3(2)^2 = 10 against 3000 * 2 * log(2)^8
    assert 1 + arith.divisor_k(2, 3) ** 2 == 10
    assert 10 <= 3000 * 2 * math.log(2) ** 8
    assert 3000 * 2 * math.log(2) ** 8 == pytest.approx(319.709, abs=1e-3)


def test_d3_square_sum_crossover_prefix():
    rec = explicit.verify_d3_square_sum(6100)
    assert rec.passed


def test_d_square_sum_flags_x2_only():
    rec = explicit.verify_d_square_sum(10**4)
    assert not rec.passed
    assert rec.params["violations"] == [2]
    assert rec.params["violation_count"] == 1
    assert rec.lhs == 5.0
    assert rec.rhs == pytest.approx(14 * math.log(2) ** 3, rel=1e-12)
    assert rec.rhs == pytest.approx(4.66, abs=5e-3)
    # X = 3 by hand: 9 <= 21 log(3)^3
    assert 1 + 4 + 4 <= 21 * math.log(3) ** 3


def test_running_checks_rescan_consistency():
    # identical records regardless of how the table is produced
    a = explicit.verify_d_square_sum(2000)
    b = explicit.verify_d_square_sum(2000)
    assert a == b


def test_rosser_schoenfeld_records():
    recs = {r.check_id: r for r in explicit.verify_rosser_schoenfeld(10**5)}
    assert recs["rs_psi_upper"].passed
    assert recs["rs_psi_upper"].params["tightest_N"] == 113
    assert recs["rs_theta_lower"].passed
    assert recs["rs_prime_power_tail"].passed
    assert recs["rs_mertens_product"].passed
    # the literal display fails from N = 49 on; reported as data
    disp = recs["rs_pi_sqrt_display"]
    assert not disp.passed
    assert disp.params["first_violation"] == 49


def test_theta_lower_hand_value():
    c = arith.chebyshev(41)
    assert c.theta > 41 - 41 / math.log(41)
    assert c.theta == pytest.approx(33.35, abs=0.01)
    assert 41 - 41 / math.log(41) == pytest.approx(29.96, abs=0.01)


def test_psi_upper_hand_value():
    c = arith.chebyshev(100)
    assert c.psi == pytest.approx(94.045, abs=0.01)
    assert c.psi <= 1.03883 * 100


def test_mertens_product_hand_value():
    primes = arith.sieve_primes(100)
    prod = 1.0
    for p in primes.tolist():
        prod *= 1 + 1 / p
    bound = math.exp(1 / math.log(100) ** 2 + 0.5 + 0.2614972128476428) * math.log(100)
    assert prod < bound
