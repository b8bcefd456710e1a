"""Regular continued fractions: quotients, convergents, the index m, growth.

Quadratic surds get an exact integer-state expansion with period detection;
rationals get the finite Euclidean expansion; decimal intervals certify the
common prefix of the two endpoint expansions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterator, Optional

from .arith import log_bigint
from .exact import (
    BeattyParams,
    DecimalInterval,
    PrecisionExhausted,
    QuadraticSurd,
    Rational,
    RealSpec,
    pow_interval,
)


class IndexBeyondCertified(IndexError):
    """A convergent index past the certified quotient prefix was requested."""


class ExpansionTooShort(ValueError):
    """The available expansion cannot reach the requested numerator size."""


class ThresholdBelowFirstNumerator(ValueError):
    """The threshold L^16 alpha^2 falls below p_0 = floor(alpha)."""


class NotPeriodic(ValueError):
    """A periodic expansion is required (quadratic surd input)."""


class IrrationalityRequired(ValueError):
    """The operation is defined only for irrational alpha."""


@dataclass(frozen=True)
class Convergent:
    n: int
    p: int
    q: int

    def as_fraction(self) -> Fraction:
        return Fraction(self.p, self.q)


@dataclass
class CFExpansion:
    quotients: list[int]
    period: Optional[tuple[int, list[int]]] = None  # (preperiod length, content)
    certified_terms: int = 0

    def quotient(self, i: int) -> int:
        """Partial quotient a_i; cycles through the period when available."""
        if i < len(self.quotients):
            return self.quotients[i]
        if self.period is not None:
            pre, content = self.period
            if i >= pre and content:
                return content[(i - pre) % len(content)]
        raise IndexBeyondCertified(f"quotient index {i} beyond certified prefix")

    def quotients_iter(self) -> Iterator[int]:
        i = 0
        while True:
            try:
                yield self.quotient(i)
            except IndexBeyondCertified:
                return
            i += 1

    @property
    def is_periodic(self) -> bool:
        return self.period is not None


def _floor_surd_state(P: int, D: int, Q: int, s: int) -> int:
    """floor((P + sqrt(D))/Q) for nonsquare D > 0, s = isqrt(D), any Q != 0."""
    if Q > 0:
        return (P + s) // Q
    return (-P - s - 1) // (-Q)


def _expand_rational(x: Fraction, max_terms: int) -> CFExpansion:
    quotients = []
    num, den = x.numerator, x.denominator
    while den != 0 and len(quotients) < max_terms:
        a = num // den
        quotients.append(a)
        num, den = den, num - a * den
    return CFExpansion(quotients, None, len(quotients))


def _expand_surd(x: QuadraticSurd, max_terms: int, state_cap: int = 100_000) -> CFExpansion:
    # iterate the integer state (P, Q) of (P + sqrt(D))/Q with Q | D - P^2;
    # the state must repeat, which pins down the period
    P, D, Q = x.p, x.d, x.q
    if (D - P * P) % Q != 0:  # defensive; canonical storage guarantees this
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    s = isqrt(D)
    quotients: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    period = None
    cap = max(max_terms, state_cap)
    while len(quotients) < cap:
        key = (P, Q)
        if key in seen:
            start = seen[key]
            period = (start, quotients[start:])
            break
        seen[key] = len(quotients)
        a = _floor_surd_state(P, D, Q, s)
        quotients.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
    certified = max_terms if period is not None else min(len(quotients), max_terms)
    return CFExpansion(quotients[:max_terms] if period is None else quotients, period, certified)


def _expand_interval(x: DecimalInterval, max_terms: int) -> CFExpansion:
    lo = _expand_rational(x.lo, max_terms + 2).quotients
    hi = _expand_rational(x.hi, max_terms + 2).quotients
    common = []
    for a, b in zip(lo, hi):
        if a != b:
            break
        common.append(a)
    certified = min(len(common), max_terms)
    # the last common quotient of two finite rational expansions may still be
    # uncertain when one expansion ends exactly there; drop it defensively.
    if certified == min(len(lo), len(hi)) and certified > 0:
        certified -= 1
    return CFExpansion(common[:certified], None, certified)


def expand(alpha: RealSpec, max_terms: int = 64, strict: bool = False) -> CFExpansion:
    """Partial quotients of alpha (alpha > 0).

    Surds give exact quotients with a detected period; rationals give the
    finite Euclidean expansion; decimal intervals certify the common prefix
    of the endpoint expansions (certified_terms may fall short of max_terms,
    which raises PrecisionExhausted when strict=True).
    """
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    if isinstance(alpha, Rational):
        return _expand_rational(alpha.value, max_terms)
    if isinstance(alpha, QuadraticSurd):
        return _expand_surd(alpha, max_terms)
    if isinstance(alpha, DecimalInterval):
        out = _expand_interval(alpha, max_terms)
        if strict and out.certified_terms < max_terms:
            raise PrecisionExhausted(
                f"only {out.certified_terms} of {max_terms} quotients certified"
            )
        return out
    raise TypeError(f"not a RealSpec: {alpha!r}")


def convergents(cf: CFExpansion, upto: int) -> list[Convergent]:
    """Convergents p_0/q_0 .. p_upto/q_upto with exact recurrence checks."""
    out: list[Convergent] = []
    p_prev, p_curr = 1, None  # p_{-1}, p_0
    q_prev, q_curr = 0, None
    for n in range(upto + 1):
        a = cf.quotient(n)  # raises IndexBeyondCertified past the prefix
        if n == 0:
            p_curr, q_curr = a, 1
        else:
            p_curr, p_prev = a * p_curr + p_prev, p_curr
            q_curr, q_prev = a * q_curr + q_prev, q_curr
        det = p_curr * q_prev - p_prev * q_curr
        if det != (-1) ** (n - 1):
            raise ArithmeticError(f"determinant identity failed at n={n}")
        out.append(Convergent(n, p_curr, q_curr))
    return out


def convergent_stream(cf: CFExpansion) -> Iterator[Convergent]:
    p_prev, q_prev = 1, 0
    p_curr, q_curr = None, None
    n = 0
    for a in cf.quotients_iter():
        if n == 0:
            p_curr, q_curr = a, 1
        else:
            p_curr, p_prev = a * p_curr + p_prev, p_curr
            q_curr, q_prev = a * q_curr + q_prev, q_curr
        yield Convergent(n, p_curr, q_curr)
        n += 1


def find_m(params: BeattyParams, cf: CFExpansion, digits: int = 50, max_steps: int = 10**6) -> int:
    """The unique m with p_m <= L^16 * alpha^2 < p_{m+1}.

    The threshold is evaluated as a certified rational interval (widened until
    both comparisons are strict), never through doubles.
    """
    if not params.is_irrational():
        raise IrrationalityRequired("the numerator index m is defined for irrational alpha")

    def threshold(dg: int) -> tuple[Fraction, Fraction]:
        llo, lhi = params.l_bounds(dg)
        if llo <= 0:
            raise ValueError("log(2 alpha B) must be positive for the threshold")
        tlo, thi = pow_interval(llo, lhi, 16)
        alo, ahi = params.alpha.bounds(dg)
        return tlo * alo * alo, thi * ahi * ahi

    for attempt in range(6):
        dg = digits * (2**attempt)
        tlo, thi = threshold(dg)
        prev: Optional[Convergent] = None
        decided = None
        steps = 0
        for conv in convergent_stream(cf):
            steps += 1
            if steps > max_steps:
                raise ExpansionTooShort("numerators did not reach the threshold")
            if Fraction(conv.p) > thi:
                if prev is None:
                    raise ThresholdBelowFirstNumerator(
                        "threshold L^16 alpha^2 is below p_0 = floor(alpha)"
                    )
                if Fraction(prev.p) <= tlo:
                    decided = prev.n
                break
            if Fraction(conv.p) <= tlo:
                prev = conv
            else:
                prev = None  # straddling the interval: refine
                break
        else:
            raise ExpansionTooShort("expansion ended before exceeding the threshold")
        if decided is not None:
            return decided
    raise PrecisionExhausted("threshold interval kept straddling a numerator")


def log_growth_rate(cf: CFExpansion) -> float:
    """Per-index limit of (log p_n)/n for a periodic expansion.

    This is log(lambda)/k where lambda is the dominant eigenvalue of the
    product of the period's quotient matrices [[a,1],[1,0]] and k the period
    length.
    """
    if cf.period is None:
        raise NotPeriodic("growth rate needs a periodic expansion")
    _, content = cf.period
    if not content:
        raise NotPeriodic("empty period content")
    m11, m12, m21, m22 = 1, 0, 0, 1
    for a in content:
        m11, m12, m21, m22 = a * m11 + m21, a * m12 + m22, m11, m12
    tr = m11 + m22
    det = m11 * m22 - m12 * m21  # always +-1
    if tr < 10**15:
        lam = (tr + math.sqrt(tr * tr - 4 * det)) / 2.0
        return math.log(lam) / len(content)
    # huge trace: log(lambda) = log(tr) + log((1 + sqrt(1 - 4 det/tr^2))/2)
    corr = math.log((1.0 + math.sqrt(1.0 - 4.0 * det / (tr * tr))) / 2.0)
    return (log_bigint(tr) + corr) / len(content)


def convergent_log_offset(cf: CFExpansion, depth: int = 200) -> float:
    """Fit constant c with log p_n ~ n * rate + c, from the deepest exact p_n."""
    rate = log_growth_rate(cf)
    last = None
    for conv in convergent_stream(cf):
        last = conv
        if conv.n >= depth:
            break
    if last is None:
        raise ExpansionTooShort("no convergents available")
    return log_bigint(last.p) - last.n * rate
