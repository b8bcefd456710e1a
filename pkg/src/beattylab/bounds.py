"""Least-prime bound evaluation in log-space.

The explicit shift index ell is around 1e18 at admissible epsilon, and the
divisor-growth constant M has log M around 1e16, so every quantity here lives
as a natural logarithm; nothing of that scale is ever materialized.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import arith
from . import constants as C
from .cfrac import (
    CFExpansion,
    Convergent,
    ExpansionTooShort,
    IrrationalityRequired,
    NotPeriodic,
    convergent_log_offset,
    convergent_stream,
    expand,
    find_m,
    log_growth_rate,
)
from .exact import BeattyParams, Q2, Rational
from .records import VerificationRecord

GOLDEN_LOG = math.log((1.0 + math.sqrt(5.0)) / 2.0)


class EpsilonOutOfRange(ValueError):
    """epsilon outside (0, 44/2025)."""


class RangeTooLarge(ValueError):
    """Finite-product enumeration of primes below e^(1/eps) is infeasible."""


@dataclass(frozen=True)
class MEpsilonValue:
    """A constant M with d(x) <= M x^eps for all x, kept as log M."""

    epsilon: float
    log_value: float
    method: str  # "vinogradov_formula" | "finite_product"


@dataclass(frozen=True)
class BoundReport:
    epsilon: float
    m: int
    ell: float
    ell_exact: Optional[int]
    log_p_m_ell: float
    log_p_provenance: str  # "exact_convergent" | "growth_rate_estimate"
    log_bound: float
    log10_bound: float


@dataclass(frozen=True)
class EtaSearchResult:
    epsilon: float
    log_eta0: float
    ell_min_fibonacci: float
    ell_min_exact: Optional[int]
    exact_declined: bool


def _logaddexp(a: float, b: float) -> float:
    return float(np.logaddexp(a, b))


def m_epsilon_vinogradov(epsilon: float) -> MEpsilonValue:
    """log M = e^(1/eps) * log(2/(e log 2)), never materializing M."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    try:
        scale = math.exp(1.0 / epsilon)
    except OverflowError:
        scale = math.inf
    return MEpsilonValue(epsilon, scale * C.M_LOG_BASE, "vinogradov_formula")


def m_epsilon_finite_product(epsilon: float) -> MEpsilonValue:
    """Product over p < e^(1/eps) of max_nu (nu+1)/p^(eps*nu), exactly maximized.

    Valid as a divisor-growth constant because primes >= e^(1/eps) contribute
    factors <= 1.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    cutoff = math.exp(1.0 / epsilon)
    if cutoff > C.FINITE_PRODUCT_GUARD:
        raise RangeTooLarge(f"e^(1/eps) = {cutoff:.3g} exceeds the enumeration guard")
    log_total = 0.0
    for p in arith.sieve_primes(int(math.ceil(cutoff)) - 1).tolist():
        if p >= cutoff:
            continue
        best = 0.0  # log of (nu+1)/p^(eps nu) at nu = 0
        nu = 1
        while True:
            cand = math.log(nu + 1.0) - epsilon * nu * math.log(p)
            if cand <= best and nu > 1.0 / (epsilon * math.log(p)):
                break  # terms are unimodal in nu; past the peak
            best = max(best, cand)
            nu += 1
        log_total += best
    return MEpsilonValue(epsilon, log_total, "finite_product")


def divisor_growth_constant(epsilon: float) -> MEpsilonValue:
    """Finite product when enumerable cheaply, closed formula otherwise."""
    if epsilon > 0 and math.exp(1.0 / epsilon) <= 10**6:
        return m_epsilon_finite_product(epsilon)
    return m_epsilon_vinogradov(epsilon)


def _require_eps(epsilon: float) -> None:
    if not (0.0 < epsilon < C.EPS_MAX):
        raise EpsilonOutOfRange(f"epsilon must lie in (0, {C.EPS_MAX:.6f})")


def _log_bracket(epsilon: float) -> float:
    """log(3711 + 2*17^-3 * M_{5eps/4}), via log-sum-exp."""
    logm = m_epsilon_vinogradov(1.25 * epsilon).log_value
    return _logaddexp(
        math.log(C.BRACKET_MAIN),
        math.log(C.BRACKET_SMALL_NUM / C.BRACKET_SMALL_DEN) + logm,
    )


def ell_from_theorem2(epsilon: float) -> float:
    """Least integer ell >= 3 + 9/eps (41 + log(1+1/eps) + log(3711 + 2*17^-3 M))."""
    _require_eps(epsilon)
    bound = C.ELL_BASE + (C.ELL_FACTOR / epsilon) * (
        C.ELL_CONST + math.log1p(1.0 / epsilon) + _log_bracket(epsilon)
    )
    if bound < 2**53:
        return float(math.ceil(bound))
    return bound  # beyond exact-integer float range; ceiling is immaterial


def eta0_sufficient(
    epsilon: float,
    cf: Optional[CFExpansion] = None,
    m: Optional[int] = None,
    enumeration_cap: int = 10**4,
) -> EtaSearchResult:
    """log eta0 of the sufficient condition, and the least admissible ell.

    ell_min_fibonacci inverts eta >= F_ell >= G^(ell-1)/sqrt(5); ell_min_exact
    walks exact numerator ratios p_{m+ell}/p_{m+1} when a continued fraction
    is supplied and the walk stays within the enumeration cap.
    """
    _require_eps(epsilon)
    log_eta0 = (4.0 / epsilon) * (
        math.log(C.ETA0_PREFACTOR)
        + C.ETA0_POW * math.log(C.ETA0_BASE)
        + C.ETA0_POW * math.log1p(1.0 / epsilon)
        + _log_bracket(epsilon)
    )
    ell_fib = math.ceil(1.0 + (log_eta0 + 0.5 * math.log(5.0)) / GOLDEN_LOG)
    ell_exact: Optional[int] = None
    declined = False
    if cf is not None and m is not None:
        # need log p_{m+ell} - log p_{m+1} >= log eta0; estimate the reach first
        if cf.is_periodic:
            rate = log_growth_rate(cf)
            if log_eta0 / rate > enumeration_cap:
                declined = True
        if not declined:
            p_m1 = None
            for conv in convergent_stream(cf):
                if conv.n == m + 1:
                    p_m1 = conv.p
                if p_m1 is not None and conv.n >= m + 1:
                    if arith.log_bigint(conv.p) - arith.log_bigint(p_m1) >= log_eta0:
                        ell_exact = conv.n - m
                        break
                if conv.n - m > enumeration_cap:
                    declined = True
                    break
            if ell_exact is None and not declined:
                declined = True
    return EtaSearchResult(epsilon, log_eta0, float(ell_fib), ell_exact, declined)


def eta_for_shift(
    params: BeattyParams,
    cf: CFExpansion,
    m: int,
    ell: int,
    enumeration_cap: int = 10**4,
) -> float:
    """log eta for the modulus choice q = p_{m+ell}.

    eta is defined through q = L^16 alpha^2 eta, so
    log eta = log p_{m+ell} - 16 log L - 2 log alpha. Exact numerators are
    used up to the enumeration cap, the periodic growth estimate beyond;
    feeding the result to check_theorem2_inequality probes whether a shift
    smaller than the stated rule already certifies a prime.
    """
    target = m + ell
    if target <= enumeration_cap:
        for conv in convergent_stream(cf):
            if conv.n == target:
                log_p = arith.log_bigint(conv.p)
                break
            if conv.n > target:
                raise ExpansionTooShort("expansion ended before m + ell")
        else:
            raise ExpansionTooShort("expansion ended before m + ell")
    else:
        rate = log_growth_rate(cf)
        log_p = target * rate + convergent_log_offset(cf, depth=min(200, enumeration_cap))
    log_l = math.log(params.l_const())
    return log_p - 16.0 * log_l - 2.0 * math.log(float(params.alpha))


def theorem1_log_bound(
    params: BeattyParams,
    epsilon: float,
    ell_override: Optional[float] = None,
    cf: Optional[CFExpansion] = None,
    enumeration_cap: int = 10**4,
    precision_digits: int = 50,
) -> BoundReport:
    """Assemble the least-prime bound in log-space.

    log bound = (35 - 16 eps) log L + 2(1 - eps) log alpha + log B
                + (1 + eps) log p_{m+ell}.
    p_{m+ell} comes from exact convergents when m+ell is small enough to
    enumerate, otherwise from the periodic growth-rate estimate.
    """
    if C.BOUND_L_EXP - C.BOUND_L_EXP_EPS * epsilon <= 0:
        raise EpsilonOutOfRange("epsilon too large for the stated exponents")
    if not params.is_irrational():
        raise IrrationalityRequired("the bound applies to irrational alpha")
    if cf is None:
        cf = expand(params.alpha, 128)
    m = find_m(params, cf, digits=precision_digits)
    if ell_override is not None:
        ell = float(ell_override)
    else:
        ell = ell_from_theorem2(epsilon)
    ell_exact = int(ell) if ell < 2**53 and float(ell).is_integer() else None
    idx = m + ell
    if ell_exact is not None and idx <= enumeration_cap:
        target = m + ell_exact
        p_val = None
        for conv in convergent_stream(cf):
            if conv.n == target:
                p_val = conv.p
                break
            if conv.n > target:
                break
        if p_val is None:
            raise NotPeriodic("expansion ended before index m + ell")
        log_p = arith.log_bigint(p_val)
        provenance = "exact_convergent"
    else:
        rate = log_growth_rate(cf)  # NotPeriodic when unavailable
        offset = convergent_log_offset(cf, depth=min(200, enumeration_cap))
        log_p = (m + ell) * rate + offset
        provenance = "growth_rate_estimate"
    log_l = math.log(params.l_const())
    log_alpha = math.log(float(params.alpha))
    log_b = math.log(params.b_float())
    log_bound = (
        (C.BOUND_L_EXP - C.BOUND_L_EXP_EPS * epsilon) * log_l
        + C.BOUND_ALPHA_EXP * (1.0 - epsilon) * log_alpha
        + log_b
        + (1.0 + epsilon) * log_p
    )
    return BoundReport(
        epsilon=epsilon,
        m=m,
        ell=ell,
        ell_exact=ell_exact,
        log_p_m_ell=log_p,
        log_p_provenance=provenance,
        log_bound=log_bound,
        log10_bound=log_bound / math.log(10.0),
    )


def _master_error_log(
    log_n: float, log_q: float, log_delta: float, epsilon: float, script_l: float
) -> float:
    """log of the master exponential-sum error bound.

    1e3 S^8 (3422 N/sqrt(q) + 251 N^(3/4) + 38 (delta N q)^(1/2)
             + (11 + 17^-3 M_{5eps/4}) (Nq/delta)^(3eps/4) delta^(2/5) N^(4/5+eps))
    with S = script_l = log(N q / delta).
    """
    b1, b2, b3, b4 = C.MASTER_BRACKET
    logm = divisor_growth_constant(1.25 * epsilon).log_value
    t1 = math.log(b1) + log_n - 0.5 * log_q
    t2 = math.log(b2) + 0.75 * log_n
    t3 = math.log(b3) + 0.5 * (log_delta + log_n + log_q)
    t4 = (
        _logaddexp(math.log(b4), -math.log(C.MASTER_SMALL_DEN) + logm)
        + 0.75 * epsilon * (log_n + log_q - log_delta)
        + 0.4 * log_delta
        + (0.8 + epsilon) * log_n
    )
    terms = t1
    for t in (t2, t3, t4):
        terms = _logaddexp(terms, t)
    return math.log(C.MASTER_PREFACTOR) + C.MASTER_S_POW * math.log(script_l) + terms


def certify_prime_below(
    params: BeattyParams,
    epsilon: float,
    conv: Optional[Convergent] = None,
    N: Optional[int] = None,
    log_N: Optional[float] = None,
    log_q: Optional[float] = None,
) -> VerificationRecord:
    """Margin of 0.73 N/alpha > |error| + 1.81 sqrt(N) + 1.04 (alpha+beta-1).

    The error term is the master exponential-sum bound instantiated at
    delta = 1/(2 alpha) and q = conv.p (reciprocal-convergent denominator for
    1/alpha). Desk-scale inputs pass (N, conv); the log-space probe passes
    (log_N, log_q) directly since the interesting N are astronomically large.
    Record lhs/rhs are natural logs of the two sides (params carry scale=log).
    """
    alpha_f = float(params.alpha)
    beta_f = float(params.beta)
    if N is not None and conv is not None:
        # Dirichlet quality |1/alpha - conv.q/conv.p| < 1/conv.p^2, checked exactly
        inv_alpha = params.alpha.to_q2().inverse()
        diff = inv_alpha - Rational(Fraction(conv.q, conv.p)).to_q2()
        gap = (diff * diff) - Q2(Fraction(1, conv.p**4))
        dirichlet_ok = gap.sign() < 0 or diff.sign() == 0
        log_n = math.log(N)
        log_q_eff = math.log(conv.p)
    elif log_N is not None and log_q is not None:
        dirichlet_ok = True  # q = p_{m+ell} by construction in the probe
        log_n = log_N
        log_q_eff = log_q
    else:
        raise ValueError("supply (N, conv) or (log_N, log_q)")
    log_delta = -math.log(2.0 * alpha_f)
    script_l = log_n + log_q_eff - log_delta  # log(N q / delta) = log(2 N q alpha)
    log_err = _master_error_log(log_n, log_q_eff, log_delta, epsilon, script_l)
    rhs_terms = _logaddexp(log_err, math.log(C.CERT_SQRT) + 0.5 * log_n)
    affine = alpha_f + beta_f - 1.0
    if affine > 0:
        rhs_terms = _logaddexp(rhs_terms, math.log(C.CERT_AFFINE) + math.log(affine))
    lhs_target = math.log(C.CERT_MAIN) + log_n - math.log(alpha_f)
    rec_params = {
        "alpha": str(params.alpha),
        "beta": str(params.beta),
        "epsilon": epsilon,
        "scale": "log",
        "log_N": log_n,
        "log_q": log_q_eff,
        "dirichlet_ok": dirichlet_ok,
    }
    return VerificationRecord.build("certify_prime_below", rec_params, lhs=rhs_terms, rhs=lhs_target)


def check_theorem2_inequality(
    params: BeattyParams,
    epsilon: float,
    eta: Optional[float] = None,
    log_eta: Optional[float] = None,
) -> VerificationRecord:
    """The reduced three-term display against 0.73, in log-safe arithmetic.

    Record lhs = log(sum of the three terms), rhs = log 0.73 (scale=log).
    """
    _require_eps(epsilon)
    if log_eta is None:
        if eta is None or eta <= 0:
            raise ValueError("supply eta > 0 or log_eta")
        log_eta = math.log(eta)
    log_l = math.log(params.l_const())
    log_alpha = math.log(float(params.alpha))
    log_b = math.log(params.b_float())
    alpha_f = float(params.alpha)
    beta_f = float(params.beta)
    c2, c67, c7 = C.T2_SCRIPT_ARGS
    script_s = (
        math.log(c2) + c67 * log_l + c7 * log_alpha + log_b + (2.0 + epsilon) * log_eta
    )
    t1 = (
        math.log(C.CERT_SQRT)
        - C.T2_L_POW_SQRT * log_l
        - log_alpha
        - 0.5 * log_b
        - 0.5 * (1.0 + epsilon) * log_eta
    )
    affine = alpha_f + beta_f - 1.0
    t2 = (
        math.log(C.CERT_AFFINE)
        + (math.log(affine) if affine > 0 else -math.inf)
        - C.T2_L_POW_FULL * log_l
        - 3.0 * log_alpha
        - log_b
        - (1.0 + epsilon) * log_eta
    )
    t3 = (
        math.log(C.MASTER_PREFACTOR)
        + C.T2_SCRIPT_POW * math.log(abs(script_s))
        - C.T2_SCRIPT_POW * log_l
        - 0.5 * epsilon * log_eta
        + _log_bracket(epsilon)
    )
    lhs = _logaddexp(_logaddexp(t1, t2), t3)
    rhs = math.log(C.CERT_MAIN)
    rec_params = {
        "alpha": str(params.alpha),
        "beta": str(params.beta),
        "epsilon": epsilon,
        "log_eta": log_eta,
        "scale": "log",
        "terms_log": [t1, t2, t3],
    }
    return VerificationRecord.build("theorem2_inequality", rec_params, lhs=lhs, rhs=rhs)
