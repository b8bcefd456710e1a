"""Beatty sequences: enumeration, exact membership, least primes, densities.

Elements floor(n*alpha + beta) are produced through an audited integer proxy
(a 60-digit rational enclosure of alpha and beta); any n whose value lands
suspiciously close to an integer is re-checked with the exact floor, so the
fast path never silently decides a boundary case.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd
from typing import Optional

import numpy as np

from . import arith
from .exact import (
    BeattyParams,
    Q2,
    RealSpec,
    compare,
    floor_linear,
    from_q2,
    rational,
)
from .records import VerificationRecord


class NotCoprime(ValueError):
    """The rational decomposition requires gcd(a, q) = 1."""


@dataclass(frozen=True)
class LeastPrimeResult:
    prime: Optional[int]
    index_n: Optional[int]
    scanned_up_to: int


@dataclass(frozen=True)
class ResidueClass:
    offset: int
    gcd_with_modulus: int
    is_prime_class: bool
    offset_is_prime: bool
    contains_prime: bool


@dataclass(frozen=True)
class ResidueClassDecomposition:
    modulus: int
    q: int
    beta: RealSpec
    classes: tuple[ResidueClass, ...]

    @property
    def offsets(self) -> list[int]:
        return [c.offset for c in self.classes]

    def has_prime_class(self) -> bool:
        return any(c.is_prime_class for c in self.classes)

    def contains_any_prime(self) -> bool:
        return any(c.contains_prime for c in self.classes)


def element(n: int, params: BeattyParams) -> int:
    """Exact floor(n*alpha + beta)."""
    return floor_linear(n, params)


def _proxy(params: BeattyParams, digits: int = 60) -> tuple[int, int, int, int]:
    """Integer proxy (a_lo, b_lo, den, guard): floor((n*a_lo + b_lo)/den)."""
    den = 10**digits
    alo, ahi = params.alpha.bounds(digits + 2)
    blo, bhi = params.beta.bounds(digits + 2)
    a_int = math.floor(alo * den)
    b_int = math.floor(blo * den)
    # per-step absolute error of the proxy value, in den units
    guard = math.ceil((ahi - alo) * den) + math.ceil((bhi - blo) * den) + 4
    return a_int, b_int, den, guard


def element_range(params: BeattyParams, n_max: int, limit: Optional[int] = None) -> list[int]:
    """[floor(n*alpha+beta) for n in 1..n_max], stopping early past `limit`.

    Rational parameters use exact small-integer arithmetic. Surds go through
    a fast integer proxy with an exactness audit: whenever the proxy value is
    within guard units of an integer boundary, the exact floor is used.
    """
    out: list[int] = []
    if params.alpha.is_rational() and params.beta.is_rational():
        a = params.alpha.to_q2().a
        b = params.beta.to_q2().a
        den = math.lcm(a.denominator, b.denominator)
        an = a.numerator * (den // a.denominator)
        bn = b.numerator * (den // b.denominator)
        acc = bn
        for _ in range(n_max):
            acc += an
            e = acc // den
            out.append(e)
            if limit is not None and e > limit:
                out.pop()
                break
        return out
    a_int, b_int, den, guard = _proxy(params)
    acc = b_int
    for n in range(1, n_max + 1):
        acc += a_int
        e, r = divmod(acc, den)
        if r < (n + 1) * guard or den - r < (n + 1) * guard:
            e = floor_linear(n, params)  # boundary-grazing: decide exactly
        out.append(e)
        if limit is not None and e > limit:
            out.pop()
            break
    return out


def is_member(mval: int, params: BeattyParams) -> bool:
    """True iff mval = floor(n*alpha + beta) for some n >= 1.

    Decided exactly through n = ceil((mval - beta)/alpha): the two-sided
    inequality n*alpha + beta - 1 < mval <= n*alpha + beta holds for that n
    or for none.
    """
    if mval < 1:
        raise ValueError("membership is defined for positive integers")
    alpha, beta = params.alpha.to_q2(), params.beta.to_q2()
    x = (Q2(mval) - beta) / alpha
    n = -((-x).floor())  # ceil; the only candidate index since 1/alpha <= 1
    if n < 1:
        return False
    return floor_linear(n, params) == mval


def least_prime(params: BeattyParams, limit: int) -> LeastPrimeResult:
    """Smallest prime member <= limit with its witness index.

    Members are scanned in ascending order (alpha >= 1 makes the sequence
    nondecreasing); absence is reported in-band, never as an error.
    """
    if limit < 2:
        raise ValueError("limit must be >= 2")
    if compare(params.alpha, rational(1)) < 0:
        raise ValueError("alpha < 1 is the trivial cofinite case; not handled here")
    flags = arith.prime_flags(limit)
    alo, _ = params.alpha.bounds(30)
    blo, _ = params.beta.bounds(30)
    n_cap = int((limit + 2 - blo) / alo) + 2
    members = element_range(params, n_cap, limit=limit)
    if members:
        arr = np.fromiter(members, dtype=np.int64)
        ok = (arr >= 2) & (arr <= limit)
        hit = np.nonzero(ok & flags[np.clip(arr, 0, limit)])[0]
        if hit.size:
            idx = int(hit[0])
            return LeastPrimeResult(int(arr[idx]), idx + 1, limit)
    return LeastPrimeResult(None, None, limit)


def prime_count(params: BeattyParams, N: int) -> tuple[int, float]:
    """(number of prime members <= N, ratio alpha * count / pi(N))."""
    if N < 2:
        raise ValueError("N must be >= 2")
    flags = arith.prime_flags(N)
    pi_n = int(flags.sum())
    alo, _ = params.alpha.bounds(30)
    blo, _ = params.beta.bounds(30)
    n_cap = int((N + 2 - blo) / alo) + 2
    members = element_range(params, n_cap, limit=N)
    arr = np.fromiter((e for e in members if e >= 1), dtype=np.int64)
    count = int(flags[arr].sum()) if arr.size else 0
    ratio = float(params.alpha) * count / pi_n if pi_n else float("nan")
    return count, ratio


def chi_membership_bridge(params: BeattyParams, N: int, plus_form: bool = False) -> VerificationRecord:
    """Check chi_delta(n*a0 - b0) = [n in B(alpha, beta)] on (alpha+beta-1, N].

    a0 = 1/alpha, b0 = (2 beta - 1)/(2 alpha), delta = 1/(2 alpha); both sides
    are decided exactly. plus_form=True tests chi_delta(n*a0 + b0) instead,
    for comparison (it detects the reflected offset 1 - beta).
    """
    if not params.alpha.is_irrational():
        raise ValueError("the bridge is stated for irrational alpha")
    alpha = params.alpha.to_q2()
    beta = params.beta.to_q2()
    if (alpha - 1).sign() <= 0:
        raise ValueError("alpha must exceed 1")
    inv_alpha = alpha.inverse()
    inv2a = (2 * alpha).inverse()
    delta = inv2a
    b0 = (2 * beta - 1) * inv2a
    start = max((alpha + beta - 1).floor() + 1, 1)
    # membership side from the audited exact enumeration, independent of the
    # chi-side arithmetic below
    alo, _ = params.alpha.bounds(30)
    blo, _ = params.beta.bounds(30)
    n_cap = int((N + 2 - blo) / alo) + 2
    member_set = set(element_range(params, n_cap, limit=N))
    mism = 0
    first_bad = None
    x = (start - 1) * inv_alpha + (b0 if plus_form else -b0)
    for n in range(start, N + 1):
        x = x + inv_alpha
        j = (x + delta).floor()
        t = x - j
        chi = 1 if ((t + delta).sign() > 0 and (t - delta).sign() <= 0) else 0
        mem = 1 if n in member_set else 0
        if chi != mem:
            mism += 1
            if first_bad is None:
                first_bad = n
    p = {
        "alpha": str(params.alpha),
        "beta": str(params.beta),
        "N": N,
        "form": "plus" if plus_form else "minus",
        "first_mismatch": first_bad if first_bad is not None else "none",
    }
    return VerificationRecord.build("chi_membership_bridge", p, lhs=float(mism), rhs=0.0)


def rational_decompose(a: int, q: int, beta: RealSpec) -> ResidueClassDecomposition:
    """B(a/q, beta) as the union of classes floor(a*b/q + beta) + a*N0, b=1..q.

    Flags per class: gcd with the modulus, prime-class status (gcd = 1), and
    whether the offset itself is prime. A class with gcd d > 1 contains a
    prime only if its offset is that prime.
    """
    if q < 2:
        raise ValueError("q must be >= 2 (non-integral alpha)")
    if a <= q:
        raise ValueError("a > q required (alpha > 1)")
    if gcd(a, q) != 1:
        raise NotCoprime(f"gcd({a}, {q}) != 1")
    classes = []
    for b in range(1, q + 1):
        off = floor_linear(b, BeattyParams(rational(a, q), beta))
        g = gcd(off, a)
        prime_class = g == 1
        off_prime = arith.is_prime(off)
        classes.append(
            ResidueClass(
                offset=off,
                gcd_with_modulus=g,
                is_prime_class=prime_class,
                offset_is_prime=off_prime,
                contains_prime=prime_class or off_prime,
            )
        )
    return ResidueClassDecomposition(a, q, beta, tuple(classes))


def rayleigh_partition_check(alpha: RealSpec, N: int) -> VerificationRecord:
    """B(alpha,0) and B(alpha',0) with 1/alpha + 1/alpha' = 1 tile 1..N."""
    if not alpha.is_irrational():
        raise ValueError("the partition needs irrational alpha")
    aq = alpha.to_q2()
    if (aq - 1).sign() <= 0:
        raise ValueError("alpha must exceed 1")
    alpha2 = from_q2(aq / (aq - 1))
    pa = BeattyParams(alpha)
    pb = BeattyParams(alpha2)
    cover = np.zeros(N + 1, dtype=np.int64)
    for p in (pa, pb):
        alo, _ = p.alpha.bounds(30)
        n_cap = int((N + 2) / alo) + 2
        for e in element_range(p, n_cap, limit=N):
            if 1 <= e <= N:
                cover[e] += 1
    bad = int(np.count_nonzero(cover[1:] != 1))
    params = {"alpha": str(alpha), "alpha_prime": str(alpha2), "N": N}
    return VerificationRecord.build("rayleigh_partition", params, lhs=float(bad), rhs=0.0)
