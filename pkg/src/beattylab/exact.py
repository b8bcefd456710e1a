"""Exact representation of the reals that parameterize Beatty sequences.

A value is a rational, a quadratic surd (P + sqrt(D))/Q, or a certified
decimal interval. Floors, comparisons and fractional-part window tests are
decided by integer arithmetic for the first two variants and by certified
bounds for intervals; an interval that cannot decide raises
PrecisionExhausted instead of guessing.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from decimal import Decimal, localcontext, ROUND_FLOOR, ROUND_CEILING
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Optional


class PrecisionExhausted(ArithmeticError):
    """A certified interval straddles the decision boundary."""


class FieldMismatch(ValueError):
    """Exact arithmetic requested across incompatible quadratic fields."""


@lru_cache(maxsize=4096)
def _square_part(n: int) -> tuple[int, int]:
    """n = s*s*d with d squarefree; returns (s, d)."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 1, 0
    s, d, p = 1, n, 2
    while p * p <= d:
        while d % (p * p) == 0:
            d //= p * p
            s *= p
        p += 1 if p == 2 else 2
    return s, d


def _sqrt_bounds(d: int, digits: int) -> tuple[Fraction, Fraction]:
    """Certified rational enclosure of sqrt(d) to about `digits` decimals."""
    scale = 10**digits
    s = isqrt(d * scale * scale)
    return Fraction(s, scale), Fraction(s + 1, scale)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_pair(a: Fraction, b: Fraction, d: int) -> int:
    """Exact sign of a + b*sqrt(d) for squarefree d >= 0."""
    if b == 0 or d == 0:
        return _sign(a)
    if a == 0:
        return _sign(b)
    sa, sb = _sign(a), _sign(b)
    if sa == sb:
        return sa
    lhs, rhs = a * a, b * b * d
    if lhs == rhs:  # only possible when sqrt(d) is rational
        return 0
    return sa if lhs > rhs else sb


class Q2:
    """Exact element a + b*sqrt(d) of a real quadratic field.

    d is squarefree; rationals are stored with b = 0, d = 1. This is the
    computational engine behind the user-facing RealSpec variants.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=1):
        a = Fraction(a)
        b = Fraction(b)
        if b == 0:
            d = 1
        if d == 0:
            a, b, d = a, Fraction(0), 1
        if d == 1 and b != 0:
            a, b = a + b, Fraction(0)
        self.a, self.b, self.d = a, b, d

    # -- ring operations -------------------------------------------------
    def _coerce(self, other) -> "Q2":
        if isinstance(other, Q2):
            return other
        return Q2(Fraction(other))

    def _join(self, other: "Q2") -> int:
        if self.b == 0:
            return other.d
        if other.b == 0:
            return self.d
        if self.d != other.d:
            raise FieldMismatch(f"sqrt({self.d}) vs sqrt({other.d})")
        return self.d

    def __add__(self, other):
        o = self._coerce(other)
        d = self._join(o)
        return Q2(self.a + o.a, self.b + o.b, d)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Q2(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        d = self._join(o)
        return Q2(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self) -> "Q2":
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        return Q2(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    # -- order and rounding ----------------------------------------------
    def sign(self) -> int:
        return _sign_pair(self.a, self.b, self.d)

    def __eq__(self, other):
        o = self._coerce(other)
        try:
            return (self - o).sign() == 0
        except FieldMismatch:
            return False

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        try:
            return (self - o).sign()
        except FieldMismatch:
            return _two_radical_sign(self.a - o.a, self.b, self.d, -o.b, o.d)

    def is_rational(self) -> bool:
        return self.b == 0

    def bounds(self, digits: int = 30) -> tuple[Fraction, Fraction]:
        if self.b == 0:
            return self.a, self.a
        lo, hi = _sqrt_bounds(self.d, digits)
        if self.b > 0:
            return self.a + self.b * lo, self.a + self.b * hi
        return self.a + self.b * hi, self.a + self.b * lo

    def floor(self) -> int:
        if self.b == 0:
            return math.floor(self.a)
        digits = 30
        while True:
            lo, hi = self.bounds(digits)
            flo, fhi = math.floor(lo), math.floor(hi)
            if flo == fhi:
                return flo
            digits *= 2  # irrational, so the enclosure separates eventually

    def __float__(self):
        lo, hi = self.bounds(30)
        return float((lo + hi) / 2)

    def __repr__(self):
        if self.b == 0:
            return f"Q2({self.a})"
        return f"Q2({self.a} + {self.b}*sqrt({self.d}))"


def _two_radical_sign(a: Fraction, b: Fraction, d1: int, c: Fraction, d2: int) -> int:
    """Exact sign of a + b*sqrt(d1) + c*sqrt(d2), distinct squarefree d1, d2 > 1.

    The value vanishes only if both radical coefficients do (distinct
    squarefree fields), so interval refinement terminates.
    """
    if b == 0:
        return _sign_pair(a, c, d2)
    if c == 0:
        return _sign_pair(a, b, d1)
    digits = 30
    while digits <= 4000:
        l1, h1 = _sqrt_bounds(d1, digits)
        l2, h2 = _sqrt_bounds(d2, digits)
        t1 = (b * l1, b * h1) if b > 0 else (b * h1, b * l1)
        t2 = (c * l2, c * h2) if c > 0 else (c * h2, c * l2)
        lo = a + t1[0] + t2[0]
        hi = a + t1[1] + t2[1]
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        digits *= 2
    raise PrecisionExhausted("two-radical sign did not separate")


# ---------------------------------------------------------------------------
# user-facing value variants
# ---------------------------------------------------------------------------


class RealSpec:
    """Base class of the exact value variants."""

    def bounds(self, digits: int = 30) -> tuple[Fraction, Fraction]:
        raise NotImplementedError

    def to_q2(self) -> Q2:
        raise NotImplementedError

    def is_rational(self) -> bool:
        raise NotImplementedError

    def is_irrational(self) -> bool:
        return not self.is_rational()

    def __float__(self):
        lo, hi = self.bounds(30)
        return float((lo + hi) / 2)


@dataclass(frozen=True)
class Rational(RealSpec):
    value: Fraction

    def bounds(self, digits: int = 30):
        return self.value, self.value

    def to_q2(self):
        return Q2(self.value)

    def is_rational(self):
        return True

    def __str__(self):
        return format_real(self)


@lru_cache(maxsize=4096)
def _surd_q2(p: int, d: int, q: int) -> "Q2":
    s, d0 = _square_part(d)
    return Q2(Fraction(p, q), Fraction(s, q), d0)


@dataclass(frozen=True)
class QuadraticSurd(RealSpec):
    """(p + sqrt(d))/q, canonical: q | d - p^2, gcd-reduced, d not a square."""

    p: int
    d: int
    q: int

    def to_q2(self):
        return _surd_q2(self.p, self.d, self.q)

    def bounds(self, digits: int = 30):
        return self.to_q2().bounds(digits)

    def is_rational(self):
        return False

    def __str__(self):
        return format_real(self)


@dataclass(frozen=True)
class DecimalInterval(RealSpec):
    """A real certified to lie in [lo, hi]; refinement is caller-driven."""

    lo: Fraction
    hi: Fraction
    literal: Optional[str] = None
    budget: Optional[int] = None

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("DecimalInterval requires lo < hi")

    def bounds(self, digits: int = 30):
        return self.lo, self.hi

    def to_q2(self):
        raise PrecisionExhausted("a decimal interval is not an exact value")

    def is_rational(self):
        return False  # unknown, treated as not-certifiably-rational

    def __str__(self):
        return format_real(self)


def rational(num: int, den: int = 1) -> Rational:
    return Rational(Fraction(num, den))


def _canonical_surd(x: Q2) -> RealSpec:
    """Canonical (P + sqrt(D))/Q storage for an exact field element."""
    if x.b == 0:
        return Rational(x.a)
    m = math.lcm(x.a.denominator, x.b.denominator)
    u = x.a.numerator * (m // x.a.denominator)
    v = x.b.numerator * (m // x.b.denominator)
    if v > 0:
        P, D, Q = u, v * v * x.d, m
    else:
        P, D, Q = -u, v * v * x.d, -m
    if (D - P * P) % Q != 0:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    # reduce by any lambda with lambda | P, lambda | Q, lambda^2 | D and
    # lambda | (D - P^2)/Q, keeping the divisibility invariant; iterate to
    # a fixed point so the stored form is deterministic.
    reduced = True
    while reduced:
        reduced = False
        g = gcd(abs(P), abs(Q))
        for lam in sorted(_divisors(g), reverse=True):
            if lam == 1:
                break
            if D % (lam * lam) == 0 and ((D - P * P) // Q) % lam == 0:
                P, D, Q = P // lam, D // (lam * lam), Q // lam
                reduced = True
                break
    return QuadraticSurd(P, D, Q)


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = []
    for i in range(1, isqrt(n) + 1):
        if n % i == 0:
            out.append(i)
            out.append(n // i)
    return sorted(set(out))


def surd(P: int, D: int, Q: int) -> RealSpec:
    """(P + sqrt(D))/Q; collapses to Rational when D is a perfect square."""
    if Q == 0:
        raise ValueError("Q must be nonzero")
    if D < 0:
        raise ValueError("D must be nonnegative")
    s, d0 = _square_part(D)
    if d0 <= 1:  # perfect-square (or zero) radicand
        return Rational(Fraction(P + (s if D > 0 else 0), Q))
    return _canonical_surd(Q2(Fraction(P, Q), Fraction(s, Q), d0))


def decimal_interval(lo: Fraction, hi: Fraction, literal: str | None = None, budget: int | None = None) -> DecimalInterval:
    return DecimalInterval(Fraction(lo), Fraction(hi), literal, budget)


def from_q2(x: Q2) -> RealSpec:
    return _canonical_surd(x)


# ---------------------------------------------------------------------------
# comparisons, floors, fractional windows
# ---------------------------------------------------------------------------


def compare(x: RealSpec, y: RealSpec) -> int:
    """-1 / 0 / +1; exact for rational and surd inputs.

    Interval operands are compared through their certified bounds; overlap
    (including an interval "equal" to an exact value) raises
    PrecisionExhausted since an interval can never certify equality.
    """
    xi = isinstance(x, DecimalInterval)
    yi = isinstance(y, DecimalInterval)
    if not xi and not yi:
        return x.to_q2()._cmp(y.to_q2())
    xlo, xhi = x.bounds()
    ylo, yhi = y.bounds()
    if xhi < ylo:
        return -1
    if xlo > yhi:
        return 1
    raise PrecisionExhausted("interval comparison undecided; supply more digits")


def floor_value(x: RealSpec) -> int:
    """Exact floor for Rational/QuadraticSurd; certified floor for intervals."""
    if isinstance(x, DecimalInterval):
        flo, fhi = math.floor(x.lo), math.floor(x.hi)
        if flo != fhi:
            raise PrecisionExhausted("decimal interval straddles an integer")
        return flo
    return x.to_q2().floor()


@dataclass(frozen=True)
class BeattyParams:
    """The pair (alpha, beta) with the derived quantities used everywhere."""

    alpha: RealSpec
    beta: RealSpec = field(default_factory=lambda: Rational(Fraction(0)))

    def __post_init__(self):
        if _bounds_sign(self.alpha) <= 0:
            raise ValueError("alpha must be positive")
        lo, _ = self.beta.bounds()
        if lo < 0 and _bounds_sign(self.beta) < 0:
            raise ValueError("beta must be nonnegative")

    # B = max(1, beta)
    def b_spec(self) -> RealSpec:
        try:
            if compare(self.beta, Rational(Fraction(1))) > 0:
                return self.beta
            return Rational(Fraction(1))
        except PrecisionExhausted:
            raise

    def b_float(self) -> float:
        return max(1.0, float(self.beta))

    def l_const(self) -> float:
        """log(2 * alpha * B) in double precision."""
        return math.log(2.0 * float(self.alpha) * self.b_float())

    def l_bounds(self, digits: int = 50) -> tuple[Fraction, Fraction]:
        """Certified enclosure of log(2 * alpha * B)."""
        alo, ahi = self.alpha.bounds(digits)
        b = self.b_spec()
        blo, bhi = b.bounds(digits)
        return ln_interval(2 * alo * blo, 2 * ahi * bhi, digits)

    def is_irrational(self) -> bool:
        return self.alpha.is_irrational()


def _bounds_sign(x: RealSpec) -> int:
    if isinstance(x, DecimalInterval):
        if x.lo > 0:
            return 1
        if x.hi < 0:
            return -1
        raise PrecisionExhausted("sign undecided")
    return x.to_q2().sign()


def _combined_bounds(n: int, params: BeattyParams, digits: int) -> tuple[Fraction, Fraction]:
    alo, ahi = params.alpha.bounds(digits)
    blo, bhi = params.beta.bounds(digits)
    return n * alo + blo, n * ahi + bhi


def floor_linear(n: int, params: BeattyParams) -> int:
    """Exact floor(n*alpha + beta)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a, b = params.alpha, params.beta
    interval = isinstance(a, DecimalInterval) or isinstance(b, DecimalInterval)
    if not interval:
        try:
            return (a.to_q2() * n + b.to_q2()).floor()
        except FieldMismatch:
            pass  # alpha, beta live in different quadratic fields
        digits = 30
        while digits <= 4000:
            lo, hi = _combined_bounds(n, params, digits)
            flo, fhi = math.floor(lo), math.floor(hi)
            if flo == fhi:
                return flo
            # straddled integer k can only be the value itself if the two
            # radical parts cancel, impossible across distinct fields unless
            # the value is rational; test explicitly.
            k = fhi
            s = _two_radical_sign(
                a.to_q2().a * n + b.to_q2().a - k,
                a.to_q2().b * n,
                a.to_q2().d,
                b.to_q2().b,
                b.to_q2().d,
            )
            if s == 0:
                return k
            digits *= 2
        raise PrecisionExhausted("mixed-field floor did not separate")
    lo, hi = _combined_bounds(n, params, 60)
    flo, fhi = math.floor(lo), math.floor(hi)
    if flo != fhi:
        raise PrecisionExhausted("decimal interval straddles an integer; supply more digits")
    return flo


def fractional_in(x: RealSpec, lo: RealSpec, hi: RealSpec) -> bool:
    """True iff x mod 1 lies in the half-open interval (lo, hi] mod 1.

    Requires hi - lo <= 1. Decided via one exact floor: x in (lo, hi] mod 1
    iff frac(hi - x) < hi - lo.
    """
    xq, loq, hiq = x.to_q2(), lo.to_q2(), hi.to_q2()
    w = hiq - loq
    if w.sign() <= 0 or (w - 1).sign() > 0:
        raise ValueError("interval must satisfy 0 < hi - lo <= 1")
    z = hiq - xq
    fz = z - z.floor()
    return (fz - w).sign() < 0


# ---------------------------------------------------------------------------
# certified logarithms (Decimal ln is correctly rounded)
# ---------------------------------------------------------------------------


def _frac_to_decimal(x: Fraction, digits: int, rounding) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = rounding
        return Decimal(x.numerator) / Decimal(x.denominator)


def _dec_to_frac(x: Decimal) -> Fraction:
    return Fraction(x)


def ln_interval(lo: Fraction, hi: Fraction, digits: int = 50) -> tuple[Fraction, Fraction]:
    """Certified enclosure of [ln lo, ln hi] for 0 < lo <= hi."""
    if lo <= 0:
        raise ValueError("ln_interval requires positive input")
    with localcontext() as ctx:
        ctx.prec = digits + 5
        dlo = _frac_to_decimal(lo, digits + 5, ROUND_FLOOR).ln()
        dhi = _frac_to_decimal(hi, digits + 5, ROUND_CEILING).ln()
        ulp_lo = Decimal(1).scaleb(dlo.adjusted() - (digits + 5) + 1) if dlo != 0 else Decimal(1).scaleb(-(digits + 5))
        ulp_hi = Decimal(1).scaleb(dhi.adjusted() - (digits + 5) + 1) if dhi != 0 else Decimal(1).scaleb(-(digits + 5))
    return _dec_to_frac(dlo) - _dec_to_frac(ulp_lo), _dec_to_frac(dhi) + _dec_to_frac(ulp_hi)


def pow_interval(lo: Fraction, hi: Fraction, k: int) -> tuple[Fraction, Fraction]:
    """[lo, hi]^k for nonnegative interval and integer k >= 1."""
    if lo < 0:
        raise ValueError("pow_interval expects a nonnegative interval")
    return lo**k, hi**k


def frac_float(x: RealSpec, mult: int = 1, digits: int = 40) -> float:
    """Accurate float of frac(mult * x), via certified bounds then floor."""
    if isinstance(x, DecimalInterval):
        lo, hi = x.bounds()
        v = (lo + hi) / 2 * mult
        return float(v - math.floor(v))
    q = x.to_q2() * mult
    f = q - q.floor()
    lo, hi = f.bounds(digits)
    return float((lo + hi) / 2)


# ---------------------------------------------------------------------------
# textual syntax: rat:a/q | surd:(P+sqrt(D))/Q | dec:LITERAL~BUDGET
# ---------------------------------------------------------------------------

_RAT_RE = re.compile(r"^rat:(-?\d+)(?:/(-?\d+))?$")
_SURD_RE = re.compile(r"^surd:\((-?\d+)\+sqrt\((\d+)\)\)/(-?\d+)$")
_DEC_RE = re.compile(r"^dec:(-?\d+(?:\.\d+)?)~(\d+)$")


def parse_real(text: str) -> RealSpec:
    text = text.strip()
    m = _RAT_RE.match(text)
    if m:
        den = int(m.group(2)) if m.group(2) else 1
        return rational(int(m.group(1)), den)
    m = _SURD_RE.match(text)
    if m:
        return surd(int(m.group(1)), int(m.group(2)), int(m.group(3)))
    m = _DEC_RE.match(text)
    if m:
        lit, budget = m.group(1), int(m.group(2))
        center = Fraction(Decimal(lit))
        eps = Fraction(1, 10**budget)
        return decimal_interval(center - eps, center + eps, literal=lit, budget=budget)
    raise ValueError(f"unrecognized real syntax: {text!r}")


def format_real(x: RealSpec) -> str:
    if isinstance(x, Rational):
        return f"rat:{x.value.numerator}/{x.value.denominator}"
    if isinstance(x, QuadraticSurd):
        return f"surd:({x.p}+sqrt({x.d}))/{x.q}"
    if isinstance(x, DecimalInterval):
        if x.literal is not None and x.budget is not None:
            return f"dec:{x.literal}~{x.budget}"
        mid = (x.lo + x.hi) / 2
        return f"dec:{float(mid)!r}~{x.budget or 15}"
    raise TypeError(f"not a RealSpec: {x!r}")


# convenient constructors for tests and the CLI
GOLDEN = surd(1, 5, 2)
SQRT2 = surd(0, 2, 1)
