"""Reduction of arbitrary real arguments to the canonical range.

Every angle sigma = q*pi decomposes uniquely as sigma = 2m*pi +/- sigma0
with integer m >= 0 and 0 <= sigma0 <= pi.  Quasiperiodicity of the
integrand then expresses the value as the value at 2m*pi plus a binomial
combination of lower-order values at sigma0; values at 2m*pi telescope
down to values at 2*pi, which carry zeta values only.  Negative angles
reflect with the parity factor (-1)^{k+1} first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Rational, SymbolicExpr, pi_expr
from .pi_extraction import ls_2pi
from .queries import LsQuery

__all__ = ["LsCombination", "power_sum", "quasiperiod_shift", "ls_2mpi", "reduce_query"]


@dataclass(frozen=True)
class LsCombination:
    """Linear combination of canonical queries plus an exact constant.

    Canonical queries have 0 <= q <= 1 or q an even integer (a multiple
    of 2*pi).  Coefficients are exact expressions (rationals times powers
    of pi), so weight(coefficient) + n(query) is constant across terms.
    """

    terms: tuple[tuple[SymbolicExpr, LsQuery], ...]
    constant: SymbolicExpr = field(default_factory=SymbolicExpr.zero)

    def weight(self):
        weights = {
            (c.weight() if isinstance(c.weight(), int) else None) + q.n
            for c, q in self.terms
            if isinstance(c.weight(), int)
        }
        return weights.pop() if len(weights) == 1 else None


def _is_canonical(q: Fraction) -> bool:
    return (0 <= q <= 1) or (q.denominator == 1 and q.numerator % 2 == 0 and q >= 0)


def power_sum(m: int, j: int) -> Rational:
    """Sum of k^j for k = 1..m (the generalized harmonic number at -j)."""
    if m < 0 or j < 0:
        raise ValueError("require m >= 0 and j >= 0")
    return Fraction(sum(k**j for k in range(1, m + 1)))


def quasiperiod_shift(
    n: int, k: int, m: int, sigma0: Fraction, sign: int
) -> LsCombination:
    """Express the value at 2m*pi + sign*sigma0 through 2m*pi and sigma0.

    Returns the combination Ls_n^(k)(2m pi) +/- sum_j (+/-1)^{k-j}
    (2m pi)^j binom(k,j) Ls_{n-j}^{(k-j)}(sigma0).
    """
    if m < 0:
        raise ValueError("require m >= 0")
    sigma0 = Fraction(sigma0)
    if not 0 <= sigma0 <= 1:
        raise ValueError("sigma0 must be the rational part q0 with 0 <= q0 <= 1")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    terms: list[tuple[SymbolicExpr, LsQuery]] = []
    base_q = Fraction(2 * m)
    if m > 0:
        terms.append((SymbolicExpr.one(), LsQuery(n, k, base_q)))
    if sigma0 != 0:
        for j in range(0, k + 1):
            coeff = Fraction(sign * sign ** (k - j) * math.comb(k, j) * (2 * m) ** j)
            if coeff == 0:
                continue
            terms.append(
                (pi_expr(j) * coeff, LsQuery(n - j, k - j, sigma0))
            )
    return LsCombination(tuple(terms))


def ls_2mpi(n: int, k: int, m: int) -> SymbolicExpr:
    """Exact value at 2m*pi, telescoped to values at 2*pi (zeta and pi only)."""
    if n < 1 or not 0 <= k <= n - 1:
        raise ValueError(f"require 1 <= n and 0 <= k <= n-1, got (n={n}, k={k})")
    if m < 0:
        raise ValueError("require m >= 0")
    if m == 0:
        return SymbolicExpr.zero()
    total = SymbolicExpr.zero()
    for j in range(0, k + 1):
        h = power_sum(m, j)
        if h == 0:
            continue
        coeff = Fraction((-1) ** (k - j) * 2**j * math.comb(k, j)) * h
        total = total + pi_expr(j) * coeff * ls_2pi(n - j, k - j)
    return total


def reduce_query(query: LsQuery) -> LsCombination:
    """Canonical decomposition of a query at any rational multiple of pi.

    Idempotent on canonical queries.  Negative angles are reflected first;
    odd multiples of pi decompose with sigma0 = pi (keeping the strongest
    evaluation route available) rather than with sign -1.
    """
    q = Fraction(query.q)
    n, k = query.n, query.k
    reflect = 1
    if q < 0:
        reflect = (-1) ** (k + 1)
        q = -q
    if _is_canonical(q):
        terms = ((SymbolicExpr.from_scalar(Fraction(reflect)), query.__class__(n, k, q)),)
        return LsCombination(terms)
    m = int(q // 2)
    r = q - 2 * m
    if r <= 1:
        sign, sigma0 = 1, r
    else:
        sign, sigma0 = -1, 2 - r
        m += 1
    comb = quasiperiod_shift(n, k, m, sigma0, sign)
    if reflect == 1:
        return comb
    terms = tuple((c * reflect, sub) for c, sub in comb.terms)
    return LsCombination(terms, comb.constant * reflect)
