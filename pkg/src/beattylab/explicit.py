"""Desk-scale audits of the explicit constants: pointwise divisor bounds,
divisor mean-square bounds, and the classical prime-counting inequalities.

Every prefix X is checked, not just the endpoint, because the claims are
for-all-X statements; violations are first-class data (records with negative
margin), never process failures.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import arith
from . import constants as C
from .records import VerificationRecord


def _default_crossovers() -> dict[str, int]:
    return {
        "d3sq": C.D3_SQUARE_CROSSOVER,
        "dsq": C.D_SQUARE_CROSSOVER,
        "theta": C.THETA_LOWER_START,
        "dyadic_trivial": C.DYADIC_TRIVIAL_CROSSOVER,
        "master_trivial": C.MASTER_TRIVIAL_CROSSOVER,
    }


@dataclass(frozen=True)
class InequalityCheckConfig:
    """Scan range plus the stated crossover thresholds per check id."""

    x_max: int
    thresholds: dict[str, int] = field(default_factory=_default_crossovers)

    def __post_init__(self):
        if self.x_max < 2:
            raise ValueError("x_max must be >= 2")


def run_all(config: InequalityCheckConfig) -> list[VerificationRecord]:
    """All explicit-constant audits at one scan range."""
    out = [
        verify_divisor_pointwise(config.x_max),
        verify_d3_square_sum(config.x_max),
        verify_d_square_sum(config.x_max),
    ]
    out += verify_rosser_schoenfeld(max(config.x_max, 41))
    return out


def verify_divisor_pointwise(x_max: int) -> VerificationRecord:
    """d(x) <= min(139 x^(1/6), 9 x^(1/4), 2 x^(1/2)) for every x <= x_max."""
    if x_max < 1:
        raise ValueError("x_max must be >= 1")
    d = arith.divisor_table(x_max)
    worst_ratio = 0.0
    worst_x = 1
    violations = 0
    chunk = 1 << 20
    for lo in range(1, x_max + 1, chunk):
        hi = min(lo + chunk, x_max + 1)
        x = np.arange(lo, hi, dtype=np.float64)
        bound = np.minimum(
            C.DIVISOR_POINTWISE[0][0] * x ** C.DIVISOR_POINTWISE[0][1],
            np.minimum(
                C.DIVISOR_POINTWISE[1][0] * x ** C.DIVISOR_POINTWISE[1][1],
                C.DIVISOR_POINTWISE[2][0] * x ** C.DIVISOR_POINTWISE[2][1],
            ),
        )
        ratio = d[lo:hi].astype(np.float64) / bound
        k = int(np.argmax(ratio))
        if ratio[k] > worst_ratio:
            worst_ratio = float(ratio[k])
            worst_x = lo + k
        violations += int(np.count_nonzero(ratio > 1.0))
    params = {
        "x_max": x_max,
        "violations": violations,
        "tightest_ratio": worst_ratio,
        "tightest_x": worst_x,
    }
    return VerificationRecord.build(
        "divisor_pointwise", params, lhs=float(violations), rhs=0.0
    )


def _running_sum_check(
    check_id: str,
    sq: np.ndarray,
    coeff: float,
    logpow: int,
    x_max: int,
    known_crossover: int,
) -> VerificationRecord:
    """sum_{x<=X} sq[x] <= coeff * X * (log X)^logpow for every X in [2, x_max]."""
    run = np.cumsum(sq[: x_max + 1], dtype=np.float64)
    xs = np.arange(2, x_max + 1, dtype=np.float64)
    rhs = coeff * xs * np.log(xs) ** logpow
    lhs = run[2 : x_max + 1]
    margins = rhs - lhs
    bad = np.nonzero(margins < 0)[0]
    if bad.size:
        worst = int(bad[np.argmin(margins[bad])]) + 2
        lhs_w, rhs_w = float(run[worst]), float(coeff * worst * math.log(worst) ** logpow)
        viol_list = (bad[:16] + 2).tolist()
    else:
        worst = int(np.argmin(margins)) + 2
        lhs_w, rhs_w = float(run[worst]), float(coeff * worst * math.log(worst) ** logpow)
        viol_list = []
    params = {
        "x_max": x_max,
        "violations": viol_list if viol_list else "none",
        "violation_count": int(bad.size),
        "tightest_X": worst,
        "analytic_crossover": known_crossover,
    }
    return VerificationRecord.build(check_id, params, lhs=lhs_w, rhs=rhs_w)


def verify_d3_square_sum(x_max: int) -> VerificationRecord:
    """Running check of sum d_3(x)^2 <= 3000 X (log X)^8 on [2, x_max]."""
    if x_max < 2:
        raise ValueError("x_max must be >= 2")
    d3 = arith.divisor3_table(x_max)
    return _running_sum_check(
        "d3_square_sum",
        (d3 * d3).astype(np.float64),
        C.D3_SQUARE_COEFF,
        C.D3_SQUARE_LOGPOW,
        x_max,
        C.D3_SQUARE_CROSSOVER,
    )


def verify_d_square_sum(x_max: int) -> VerificationRecord:
    """Running check of sum d(x)^2 <= 7 X (log X)^3 on [2, x_max].

    The X = 2 prefix genuinely violates the stated bound with natural logs
    (LHS 5 vs RHS 14 log(2)^3 ~ 4.66); the record reports it rather than
    passing silently. All X >= 3 hold.
    """
    if x_max < 2:
        raise ValueError("x_max must be >= 2")
    d = arith.divisor_table(x_max).astype(np.int64)
    return _running_sum_check(
        "d_square_sum",
        (d * d).astype(np.float64),
        C.D_SQUARE_COEFF,
        C.D_SQUARE_LOGPOW,
        x_max,
        C.D_SQUARE_CROSSOVER,
    )


def _chebyshev_events(n_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(positions, psi increments, theta increments) sorted by position."""
    primes = arith.sieve_primes(n_max)
    pos = [primes]
    psi_inc = [np.log(primes.astype(np.float64))]
    theta_inc = [np.log(primes.astype(np.float64))]
    for p in primes[primes <= math.isqrt(n_max)].tolist():
        lp = math.log(p)
        q = p * p
        while q <= n_max:
            pos.append(np.array([q], dtype=np.int64))
            psi_inc.append(np.array([lp]))
            theta_inc.append(np.array([0.0]))
            q *= p
    ps = np.concatenate(pos)
    order = np.argsort(ps, kind="stable")
    return ps[order], np.concatenate(psi_inc)[order], np.concatenate(theta_inc)[order]


def verify_rosser_schoenfeld(n_max: int, product_samples: int = 12) -> list[VerificationRecord]:
    """The classical prime-counting inequalities, scanned over [2, n_max].

    Five records:
      rs_psi_upper      psi(N) <= 1.03883 N for all N <= n_max
      rs_theta_lower    theta(N) > N - N/log N for 41 <= N <= n_max
      rs_prime_power_tail  psi(N) - theta(N) <= (1 + 3/log N) sqrt(N)
      rs_pi_sqrt_display   pi(sqrt(N)) log N < (1 + 3/log N) sqrt(N), the
                           stated display; it fails from N = 49 on (the
                           actual prime-power tail above is what holds) and
                           the violations are reported as data
      rs_mertens_product   prod_{p<=X} (1 + 1/p) < exp(1/log^2 X + 1/2 + B1) log X
                           at sampled X
    """
    if n_max < 41:
        raise ValueError("n_max must be >= 41")
    pos, psi_inc, theta_inc = _chebyshev_events(n_max)
    psi = np.cumsum(psi_inc)
    theta = np.cumsum(theta_inc)
    out: list[VerificationRecord] = []

    # psi(N) <= c0 N: between events psi is constant and c0 N grows, so the
    # binding check is at event positions.
    margins = C.CHEBYSHEV_C0 * pos.astype(np.float64) - psi
    k = int(np.argmin(margins))
    out.append(
        VerificationRecord.build(
            "rs_psi_upper",
            {"n_max": n_max, "tightest_N": int(pos[k]), "violations": int((margins < 0).sum())},
            lhs=float(psi[k]),
            rhs=float(C.CHEBYSHEV_C0 * pos[k]),
        )
    )

    # theta(N) > N - N/log N for N >= 41: theta is constant between primes
    # while the right side increases, so check each gap at its right edge.
    prime_mask = theta_inc > 0
    prime_pos = pos[prime_mask]
    theta_at_prime = theta[prime_mask]
    gap_right = np.empty_like(prime_pos)
    gap_right[:-1] = prime_pos[1:] - 1
    gap_right[-1] = n_max
    sel = gap_right >= C.THETA_LOWER_START
    worst_margin = math.inf
    worst_n = None
    lhs_w = rhs_w = 0.0
    violations = 0
    xs = np.maximum(gap_right[sel].astype(np.float64), float(C.THETA_LOWER_START))
    ths = theta_at_prime[sel]
    rhs_vals = xs - xs / np.log(xs)
    margs = ths - rhs_vals
    violations = int((margs <= 0).sum())
    k = int(np.argmin(margs))
    out.append(
        VerificationRecord.build(
            "rs_theta_lower",
            {"n_max": n_max, "start": C.THETA_LOWER_START, "tightest_N": int(xs[k]), "violations": violations},
            lhs=float(rhs_vals[k]),
            rhs=float(ths[k]),
            passed=violations == 0,
        )
    )

    # prime-power tail psi - theta vs (1 + 3/log N) sqrt(N): the left side
    # jumps only at proper prime powers; right side increases for N >= 8,
    # so check small N directly and events beyond.
    tail_ok = True
    worst = (math.inf, 2, 0.0, 0.0)
    psi_minus_theta = psi - theta
    small_cap = min(n_max, 1000)
    idx = np.searchsorted(pos, np.arange(2, small_cap + 1), side="right") - 1
    pmt_small = np.where(idx >= 0, psi_minus_theta[np.maximum(idx, 0)], 0.0)
    ns_small = np.arange(2, small_cap + 1, dtype=np.float64)
    rhs_small = (1.0 + C.TAIL_LOG_COEFF / np.log(ns_small)) * np.sqrt(ns_small)
    m_small = rhs_small - pmt_small
    k = int(np.argmin(m_small))
    if m_small[k] < worst[0]:
        worst = (float(m_small[k]), int(ns_small[k]), float(pmt_small[k]), float(rhs_small[k]))
    power_mask = (theta_inc == 0) & (pos > small_cap)
    if power_mask.any():
        ppos = pos[power_mask].astype(np.float64)
        pval = psi_minus_theta[power_mask]
        rr = (1.0 + C.TAIL_LOG_COEFF / np.log(ppos)) * np.sqrt(ppos)
        mm = rr - pval
        k = int(np.argmin(mm))
        if mm[k] < worst[0]:
            worst = (float(mm[k]), int(ppos[k]), float(pval[k]), float(rr[k]))
    out.append(
        VerificationRecord.build(
            "rs_prime_power_tail",
            {"n_max": n_max, "tightest_N": worst[1]},
            lhs=worst[2],
            rhs=worst[3],
        )
    )

    # the literal display with the worst case alpha -> infinity; expected to
    # fail for N >= 49, reported as audit data
    pi_run = np.cumsum(prime_mask.astype(np.int64))
    sq = np.arange(2, math.isqrt(n_max) + 1, dtype=np.int64)
    first_bad: Optional[int] = None
    worst_m = math.inf
    worst_tuple = (0.0, 0.0, 2)
    bad_count = 0
    for s in sq.tolist():
        lo_n = s * s
        hi_n = min((s + 1) * (s + 1) - 1, n_max)
        if lo_n > n_max:
            break
        k = int(np.searchsorted(pos, s, side="right")) - 1
        pi_s = int(pi_run[k]) if k >= 0 else 0
        for N in (lo_n, hi_n):
            lhs_v = pi_s * math.log(N)
            rhs_v = (1.0 + C.TAIL_LOG_COEFF / math.log(N)) * math.sqrt(N)
            if rhs_v - lhs_v < 0:
                bad_count += 1
                if first_bad is None:
                    first_bad = N
            if rhs_v - lhs_v < worst_m:
                worst_m = rhs_v - lhs_v
                worst_tuple = (lhs_v, rhs_v, N)
    out.append(
        VerificationRecord.build(
            "rs_pi_sqrt_display",
            {
                "n_max": n_max,
                "first_violation": first_bad if first_bad is not None else "none",
                "tightest_N": worst_tuple[2],
                "note": "stated display; the prime-power tail check is the sound form",
            },
            lhs=worst_tuple[0],
            rhs=worst_tuple[1],
        )
    )

    # Euler product at sampled X
    primes = prime_pos
    log_terms = np.log1p(1.0 / primes.astype(np.float64))
    run_prod = np.cumsum(log_terms)
    samples = np.unique(
        np.geomspace(3, n_max, product_samples).astype(np.int64)
    )
    worst_m = math.inf
    worst_tuple = (0.0, 0.0, 3)
    viol = 0
    for X in samples.tolist():
        k = int(np.searchsorted(primes, X, side="right")) - 1
        lhs_v = math.exp(float(run_prod[k])) if k >= 0 else 1.0
        lx = math.log(X)
        rhs_v = math.exp(1.0 / lx**2 + 0.5 + C.MERTENS_B1) * lx
        if rhs_v - lhs_v < worst_m:
            worst_m = rhs_v - lhs_v
            worst_tuple = (lhs_v, rhs_v, X)
        if rhs_v <= lhs_v:
            viol += 1
    out.append(
        VerificationRecord.build(
            "rs_mertens_product",
            {"n_max": n_max, "samples": samples.tolist(), "tightest_X": worst_tuple[2], "violations": viol},
            lhs=worst_tuple[0],
            rhs=worst_tuple[1],
        )
    )
    return out
