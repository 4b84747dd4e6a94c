"""Closed forms at pi and 2*pi.

Values of the generalized log-sine integrals at sigma = pi come from a
generating function whose right-hand side is a sum over m >= 0 of three
factors: the binomial series binom(lambda, m), a two-exponential factor,
and the simple pole 1/(mu - lambda/2 + m).  Each factor has closed-form
mixed derivatives at the origin, so a coefficient can be extracted
exactly with the Leibniz rule; the resulting sums over m fold into
Nielsen polylogarithm symbols at +1 and -1.  The infinite m-sum is never
truncated.

At sigma = 2*pi the generating function collapses to a central-binomial
Gamma quotient and the coefficients contain zeta values only.  Basic
values Ls_n(pi) also follow from a classical recurrence, giving an
independent symbolic route.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    GaussianRational,
    IMAG_UNIT,
    SymbolicExpr,
    li_minus_one,
    log2_expr,
    log_pi,
    pi_expr,
    zeta,
)
from .series import TruncatedSeries, binom_central_series, loggamma_at_1, loggamma_at_half

__all__ = ["ls_pi", "ls_pi_basic", "ls_2pi", "lsc_pi"]


def _check_orders(n: int, k: int) -> None:
    if n < 1 or not 0 <= k <= n - 1:
        raise ValueError(f"require 1 <= n and 0 <= k <= n-1, got (n={n}, k={k})")


@lru_cache(maxsize=None)
def ls_pi(n: int, k: int) -> SymbolicExpr:
    """Exact value of the weight-n log-sine integral at pi with theta^k.

    The result is weight homogeneous of weight n over pi, zeta, log 2 and
    Nielsen polylogarithms at -1; single zeta values at even weight and
    depth-1 values at -1 are left unreduced so the raw output stays
    auditable (the reduction engine normalizes them).
    """
    _check_orders(n, k)
    a = n - 1 - k  # lambda-order
    b = k  # mu-order

    # m = 0 contribution of the pole factor: Taylor coefficient
    # (pi/2^a) (i pi)^{a+b} / (a+b+1)!  -- Beta(a+1, b+1) folded exactly.
    coeff0 = (IMAG_UNIT ** (a + b)) * Fraction(1, 2**a * math.factorial(a + b + 1))
    total = SymbolicExpr.from_scalar(coeff0) * pi_expr(a + b + 1)

    # m >= 1 terms via the Leibniz rule over the three factors.  The
    # binomial factor contributes (-1)^{a1} (-1)^m H_{m-1}^{[a1-1]}/m for
    # lambda-order a1 >= 1; its (-1)^m combines with the exponential
    # factor's sign so sums land at +1 (zeta) or -1 (alternating).
    msum = SymbolicExpr.zero()
    for a1 in range(1, a + 1):
        ones = a1 - 1
        for p in range(0, a - a1 + 1):
            beta = a - a1 - p
            cases = []
            if p >= 1:
                # exponential factor supplies lambda^p: (i pi / 2)^p / p!
                u = SymbolicExpr.from_scalar(
                    IMAG_UNIT**p * Fraction(1, 2**p * math.factorial(p))
                ) * pi_expr(p)
                cases.append((b, u, None))
            else:
                # constant part ((-1)^m - 1): +1 sum and -1 sum
                cases.append((b, SymbolicExpr.one(), SymbolicExpr.from_scalar(-1)))
                # mu^q part: -(i pi)^q / q!
                for q in range(1, b + 1):
                    v = SymbolicExpr.from_scalar(
                        -(IMAG_UNIT**q) * Fraction(1, math.factorial(q))
                    ) * pi_expr(q)
                    cases.append((b - q, None, v))
            for alpha, u, v in cases:
                # pole factor: (-1)^alpha (1/2)^beta binom(alpha+beta, alpha)
                # and a 1/m^{alpha+beta+1}; with the binomial factor's 1/m
                # every folded sum has exponent s >= 2.
                s = alpha + beta + 2
                assert s >= 2, "divergence guard: folded sums need s >= 2"
                g3 = Fraction((-1) ** alpha * math.comb(alpha + beta, alpha), 2**beta)
                factor = Fraction((-1) ** a1) * g3
                index = (s,) + (1,) * ones
                if u is not None:
                    msum = msum + u * factor * zeta(*index)
                if v is not None:
                    msum = msum + v * factor * li_minus_one(*index)

    total = total + SymbolicExpr.from_scalar(IMAG_UNIT) * msum
    norm = GaussianRational.coerce(
        Fraction(-math.factorial(a) * math.factorial(b))
    ) * IMAG_UNIT ** (-b)
    result = (SymbolicExpr.from_scalar(norm) * total).real_component()
    assert not result.has_transient()
    return result


@lru_cache(maxsize=None)
def ls_pi_basic(n: int) -> SymbolicExpr:
    """Basic value Ls_n(pi) via the classical recurrence.

    Seeds Ls_1(pi) = -pi and Ls_2(pi) = 0; each step brings in the factor
    alpha(j) = (1 - 2^{1-j}) zeta(j).  Output stays over pi and zeta
    symbols (even zeta values unreduced).
    """
    if n < 1:
        raise ValueError("require n >= 1")
    if n == 1:
        return -pi_expr()
    if n == 2:
        return SymbolicExpr.zero()
    m = n - 2

    def alpha(j: int) -> SymbolicExpr:
        return zeta(j) * Fraction(2 ** (j - 1) - 1, 2 ** (j - 1))

    rhs = pi_expr() * alpha(m + 1)
    for k in range(1, m - 1):
        rhs = rhs + ls_pi_basic(k + 2) * alpha(m - k) * Fraction(
            (-1) ** k, math.factorial(k + 1)
        )
    return rhs * Fraction((-1) ** m * math.factorial(m))


@lru_cache(maxsize=None)
def _central_series(order: int) -> TruncatedSeries:
    return binom_central_series(order)


@lru_cache(maxsize=None)
def ls_2pi(n: int, k: int) -> SymbolicExpr:
    """Value at 2*pi: coefficient extraction from the Gamma-quotient form.

    The assembled coefficient is identically real before the real part is
    taken (asserted); the result contains pi and zeta symbols only.
    """
    _check_orders(n, k)
    nn = n - 1 - k
    series = _central_series(max(nn + k, 1))
    acc = SymbolicExpr.zero()
    for j in range(0, k + 1):
        g = series.coefficient(nn, k - j)
        if g.is_zero():
            continue
        cj = IMAG_UNIT ** (j - k) * Fraction(1, math.factorial(j))
        acc = acc + SymbolicExpr.from_scalar(cj) * pi_expr(j) * g
    result = acc * Fraction(-2 * math.factorial(nn) * math.factorial(k))
    result = result * pi_expr()
    assert result.is_real(), "2*pi extraction must be real before projection"
    assert not result.has_transient()
    return result.real_component()


@lru_cache(maxsize=None)
def lsc_pi(m: int, n: int) -> SymbolicExpr:
    """Log-sine-cosine value at pi from its two-variable generating function.

    Assembles exp of the log-Gamma combination 2^{x+y} Gamma((1+x)/2)
    Gamma((1+y)/2) / (pi Gamma(1+(x+y)/2)); the transient log pi and
    EulerGamma contributions cancel identically (asserted) and the
    (x^{m-1} y^{n-1}) coefficient gives the value over pi, log 2, zeta.
    """
    if m < 1 or n < 1:
        raise ValueError("require m, n >= 1")
    order = max((m - 1) + (n - 1), 1)
    vars = ("x", "y")
    x = TruncatedSeries.variable("x", vars, order)
    y = TruncatedSeries.variable("y", vars, order)
    log_rhs = (x + y).scale(log2_expr())
    log_rhs = log_rhs + TruncatedSeries.constant(-log_pi(), vars, order)
    log_rhs = log_rhs + loggamma_at_half(x.scale(Fraction(1, 2)))
    log_rhs = log_rhs + loggamma_at_half(y.scale(Fraction(1, 2)))
    log_rhs = log_rhs - loggamma_at_1((x + y).scale(Fraction(1, 2)))
    assert not log_rhs.has_symbol(
        lambda s: s.is_transient
    ), "transient symbols failed to cancel in the log-sine-cosine kernel"
    assert log_rhs.constant_term().is_zero()
    g = log_rhs.exp()
    coeff = g.coefficient(m - 1, n - 1)
    result = coeff * Fraction(-math.factorial(m - 1) * math.factorial(n - 1))
    result = result * pi_expr()
    assert not result.has_transient()
    return result
