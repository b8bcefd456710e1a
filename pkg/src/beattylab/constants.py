"""Single table of the explicit numerical constants used by the bound and
verification modules, named by role so they can be audited in one place."""
from __future__ import annotations

import math

# prime-existence certification: 0.73 N/alpha > |error| + 1.81 sqrt(N) + 1.04 (alpha+beta-1)
CERT_MAIN = 0.73
CERT_SQRT = 1.81
CERT_AFFINE = 1.04

# Chebyshev bound psi(N) <= C0 * N
CHEBYSHEV_C0 = 1.03883

# least-prime bound exponents: p <= L^(35-16 eps) alpha^(2(1-eps)) B p_{m+ell}^(1+eps)
BOUND_L_EXP = 35.0
BOUND_L_EXP_EPS = 16.0
BOUND_ALPHA_EXP = 2.0
THRESHOLD_L_POW = 16  # m is fixed by p_m <= L^16 alpha^2 < p_{m+1}

# admissible epsilon range for the explicit shift rule
EPS_MAX = 44.0 / 2025.0

# shift rule: ell >= 3 + 9/eps (41 + log(1 + 1/eps) + log(3711 + 2*17^-3 M))
ELL_BASE = 3.0
ELL_FACTOR = 9.0
ELL_CONST = 41.0
BRACKET_MAIN = 3711.0
BRACKET_SMALL_NUM = 2.0
BRACKET_SMALL_DEN = 17.0**3

# sufficient eta: eta^(eps/4) > 2e3 * 65^8 (1+1/eps)^8 (3711 + 2*17^-3 M)
ETA0_PREFACTOR = 2.0e3
ETA0_BASE = 65.0
ETA0_POW = 8

# divisor growth constant via the closed formula M = (2/(e log 2))^(e^(1/eps))
M_LOG_BASE = math.log(2.0 / (math.e * math.log(2.0)))

# guard for enumerating primes below e^(1/eps) in the finite-product route
FINITE_PRODUCT_GUARD = 10**8

# exponential-sum master bound bracket (script-S^8 scale):
# 1e3 S^8 (3422 N q^-1/2 + 251 N^3/4 + 38 (delta N q)^1/2
#          + (11 + 17^-3 M) (N q / delta)^(3 eps/4) delta^(2/5) N^(4/5+eps))
MASTER_PREFACTOR = 1.0e3
MASTER_BRACKET = (3422.0, 251.0, 38.0, 11.0)
MASTER_SMALL_DEN = 17.0**3
MASTER_S_POW = 8

# dyadic block bound bracket (script-S^7 scale)
DYADIC_BRACKET = (560.0, 41.0, 86.0, 21.0)
DYADIC_SMALL = 1.0e-7
DYADIC_S_POW = 7

# aggregated S(H) bound bracket (script-S^7 scale)
SH_BRACKET = (1120.0, 82.0, 294.0, 62.0)
SH_SMALL = 1.0e-6
SH_S_POW = 7

# linear-form sums:
#   sum min(Y, 1/(2 ||a x - b||)) < 4 X Y/q + 4 Y + (X + q) log q
#   sum min(XY/x, 1/(2 ||a x||))  < (10 X Y/q + X + 7/2 q) log(2 X Y q)
LINFORM_SHIFTED = (4.0, 4.0, 1.0)
LINFORM_HYPERBOLIC = (10.0, 1.0, 3.5)

# bilinear sums: l^(3/2) (sum|a|^2 sum|b|^2)^(1/2) (167 XY/q + 70 X + 6 Y + 10 q)^(1/2)
BILINEAR = (167.0, 70.0, 6.0, 10.0)

# pointwise divisor bounds d(x) <= C x^e for the three special exponents
DIVISOR_POINTWISE = ((139.0, 1.0 / 6.0), (9.0, 0.25), (2.0, 0.5))

# mean-square divisor bounds, with the crossover X where the analytic
# argument takes over from direct computation
D3_SQUARE_COEFF = 3000.0
D3_SQUARE_LOGPOW = 8
D3_SQUARE_CROSSOVER = 6100
D_SQUARE_COEFF = 7.0
D_SQUARE_LOGPOW = 3
D_SQUARE_CROSSOVER = 171

# theta(N) > N - N/log N for N >= 41
THETA_LOWER_START = 41

# crossovers below which the trivial estimate c0 N^(1/4) * (J) N^(3/4)
# already implies the dyadic/master bounds
DYADIC_TRIVIAL_CROSSOVER = 40_000
MASTER_TRIVIAL_CROSSOVER = 28 * 10**22

# Euler-product bound: prod_{p<=X} (1 + 1/p) < exp(1/log^2 X + 1/2 + B1) log X
MERTENS_B1 = 0.2614972128476428

# prime-power tail: psi(N) - theta(N) <= (1 + 3/log N) sqrt(N)
TAIL_LOG_COEFF = 3.0

# theorem-2 reduced display coefficients
#   0.73 > 1.81 L^(-51/2) a^-1 B^(-1/2) eta^(-(1+e)/2)
#        + 1.04 L^(-51) (a+b-1) a^-3 B^-1 eta^(-(1+e))
#        + 1e3 S^8 L^-8 eta^(-e/2) (3711 + 2*17^-3 M)
T2_L_POW_SQRT = 51.0 / 2.0
T2_L_POW_FULL = 51.0
T2_SCRIPT_POW = 8
# script-S = log(2 L^67 a^7 B eta^(2+e))
T2_SCRIPT_ARGS = (2.0, 67.0, 7.0)
