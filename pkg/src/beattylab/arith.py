"""Integer-arithmetic kernels: sieves, multiplicative functions, Chebyshev sums.

Everything here is exact integer work (or float logs of exact integers) shared
by the Beatty, exponential-sum and inequality modules. All logarithms are
natural logarithms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import isqrt
from typing import Iterator

import numpy as np

DEFAULT_SEGMENT = 1 << 20

# deterministic Miller-Rabin witnesses, valid for all n < 3.3e24
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class SieveSegment:
    """Primality flags for the half-open window [lo, hi)."""

    lo: int
    hi: int
    flags: np.ndarray  # bool; flags[i] is True iff lo + i is prime

    def primes(self) -> np.ndarray:
        return self.lo + np.nonzero(self.flags)[0]


@dataclass(frozen=True)
class ArithSummary:
    """Chebyshev psi(N), theta(N) and the prime count pi(N)."""

    N: int
    psi: float
    theta: float
    pi_count: int


def _dense_flags(limit: int) -> np.ndarray:
    """Boolean array f of size limit+1 with f[n] = n is prime."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def prime_flags(limit: int) -> np.ndarray:
    if limit < 1:
        return np.zeros(max(limit + 1, 1), dtype=bool)
    return _dense_flags(limit)


def sieve_segments(limit: int, segment_size: int = DEFAULT_SEGMENT) -> Iterator[SieveSegment]:
    """Segmented Eratosthenes over [2, limit]; memory stays O(segment_size)."""
    if limit < 2:
        return
    if segment_size < 2:
        raise ValueError("segment_size must be at least 2")
    root = isqrt(limit)
    base = np.nonzero(_dense_flags(root))[0] if root >= 2 else np.array([], dtype=np.int64)
    lo = 2
    while lo <= limit:
        hi = min(lo + segment_size, limit + 1)
        flags = np.ones(hi - lo, dtype=bool)
        for p in base.tolist():
            if p * p >= hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            flags[start - lo :: p] = False
        if lo <= 1:
            flags[: 2 - lo] = False
        yield SieveSegment(lo, hi, flags)
        lo = hi


def sieve_primes(limit: int, segment_size: int = DEFAULT_SEGMENT) -> np.ndarray:
    """All primes <= limit, ascending. Empty array for limit < 2."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    parts = [seg.primes() for seg in sieve_segments(limit, segment_size)]
    return np.concatenate(parts) if parts else np.array([], dtype=np.int64)


def iter_primes(limit: int, segment_size: int = DEFAULT_SEGMENT) -> Iterator[int]:
    for seg in sieve_segments(limit, segment_size):
        for p in seg.primes().tolist():
            yield int(p)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (valid far beyond 64-bit range)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, [(p, exponent), ...]."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.append((p, e))
        f += 6
    if n > 1:
        out.append((n, 1))
    return out


def von_mangoldt(n: int) -> float:
    """log p if n is a prime power p^k (k >= 1), else 0."""
    if n < 1:
        raise ValueError("von_mangoldt expects n >= 1")
    if n == 1:
        return 0.0
    fac = factorize(n)
    if len(fac) != 1:
        return 0.0
    return math.log(fac[0][0])


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("moebius expects n >= 1")
    if n == 1:
        return 1
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def divisor_k(n: int, k: int = 2) -> int:
    """Number of ordered k-tuples of positive integers with product n."""
    if n < 1:
        raise ValueError("divisor_k expects n >= 1")
    if k < 1:
        raise ValueError("divisor_k expects k >= 1")
    out = 1
    for _, e in factorize(n):
        out *= math.comb(e + k - 1, k - 1)
    return out


def moebius_table(limit: int) -> np.ndarray:
    """mu(0..limit) with mu[0] = 0."""
    mu = np.ones(limit + 1, dtype=np.int64)
    mu[0] = 0
    for p in sieve_primes(limit).tolist():
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p :: p * p] = 0
    return mu


def mangoldt_support(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """Positions n <= limit with Lambda(n) > 0 and the values log p, sorted by n."""
    primes = sieve_primes(limit)
    pos = [primes]
    val = [np.log(primes.astype(np.float64))]
    for p in primes[primes <= isqrt(limit)].tolist():
        lp = math.log(p)
        q = p * p
        while q <= limit:
            pos.append(np.array([q], dtype=np.int64))
            val.append(np.array([lp]))
            q *= p
    ns = np.concatenate(pos)
    ws = np.concatenate(val)
    order = np.argsort(ns, kind="stable")
    return ns[order], ws[order]


def mangoldt_table(limit: int) -> np.ndarray:
    """Lambda(0..limit) as float64."""
    lam = np.zeros(limit + 1)
    ns, ws = mangoldt_support(limit)
    lam[ns] = ws
    return lam


def divisor_table(limit: int) -> np.ndarray:
    """d(0..limit) = number of divisors, via paired divisors up to sqrt(x)."""
    d = np.zeros(limit + 1, dtype=np.int32)
    for i in range(1, isqrt(limit) + 1):
        d[i * i :: i] += 2
        d[i * i] -= 1
    return d


def divisor3_table(limit: int) -> np.ndarray:
    """d_3(0..limit) as the Dirichlet convolution of d with 1."""
    d2 = divisor_table(limit).astype(np.int64)
    d3 = np.zeros(limit + 1, dtype=np.int64)
    for i in range(1, limit + 1):
        d3[i::i] += d2[1 : limit // i + 1]
    return d3


def chebyshev(N: int) -> ArithSummary:
    """Exact-from-sieve psi(N), theta(N), pi(N)."""
    if N < 1:
        raise ValueError("chebyshev expects N >= 1")
    if N < 2:
        return ArithSummary(N, 0.0, 0.0, 0)
    primes = sieve_primes(N)
    theta = math.fsum(math.log(int(p)) for p in primes)
    psi = theta
    extra = []
    for p in primes[primes <= isqrt(N)].tolist():
        lp = math.log(p)
        q = p * p
        while q <= N:
            extra.append(lp)
            q *= p
    psi = math.fsum([theta] + extra)
    return ArithSummary(N, psi, theta, int(primes.size))


def fibonacci(n: int) -> int:
    """F_n with F_0 = 0, F_1 = 1, by fast doubling."""
    if n < 0:
        raise ValueError("fibonacci expects n >= 0")

    def fd(k: int) -> tuple[int, int]:
        if k == 0:
            return 0, 1
        a, b = fd(k >> 1)
        c = a * (2 * b - a)
        d = a * a + b * b
        if k & 1:
            return d, c + d
        return c, d

    return fd(n)[0]


def log_bigint(x: int) -> float:
    """Natural log of a positive integer of arbitrary size."""
    if x <= 0:
        raise ValueError("log_bigint expects x > 0")
    bits = x.bit_length()
    if bits <= 900:
        return math.log(x)
    shift = bits - 64
    return math.log(x >> shift) + shift * math.log(2.0)
