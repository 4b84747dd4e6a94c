"""Truncated formal power series over the exact coefficient ring.

Supports one or two named variables with a shared total-degree bound and
the log-Gamma expansion kernels needed to assemble the generating
functions for log-sine and log-sine-cosine values.  Arithmetic never
extends the truncation bound; the Euler-Mascheroni constant enters only
through the transient EulerGamma symbol and is asserted to cancel where
it must.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .algebra import (
    SymbolicExpr,
    euler_gamma,
    log2_expr,
    log_pi,
    zeta,
)

__all__ = [
    "TruncatedSeries",
    "loggamma_at_1",
    "loggamma_at_half",
    "binom_central_series",
]


class TruncatedSeries:
    """Formal power series truncated at a fixed total degree.

    Coefficients are SymbolicExpr values keyed by exponent vectors over
    the declared variables.
    """

    __slots__ = ("vars", "order", "coeffs")

    def __init__(self, vars: tuple[str, ...], order: int, coeffs=None):
        if not 1 <= len(vars) <= 2:
            raise ValueError("series support one or two variables")
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        self.vars = tuple(vars)
        self.order = order
        clean: dict[tuple[int, ...], SymbolicExpr] = {}
        if coeffs:
            for expo, val in coeffs.items():
                if len(expo) != len(self.vars):
                    raise ValueError("exponent arity mismatch")
                if sum(expo) > order:
                    raise ValueError("stored exponent exceeds truncation bound")
                if val:
                    clean[tuple(expo)] = val
        self.coeffs = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(value, vars: tuple[str, ...], order: int) -> "TruncatedSeries":
        e = value if isinstance(value, SymbolicExpr) else SymbolicExpr.from_scalar(value)
        zero = (0,) * len(vars)
        return TruncatedSeries(vars, order, {zero: e})

    @staticmethod
    def variable(name: str, vars: tuple[str, ...], order: int) -> "TruncatedSeries":
        expo = tuple(1 if v == name else 0 for v in vars)
        if sum(expo) != 1:
            raise ValueError(f"unknown variable {name!r}")
        return TruncatedSeries(vars, order, {expo: SymbolicExpr.one()})

    # -- arithmetic --------------------------------------------------------

    def _check_compatible(self, other: "TruncatedSeries") -> None:
        if self.vars != other.vars or self.order != other.order:
            raise ValueError("series variable set or truncation bound mismatch")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_compatible(other)
        out = dict(self.coeffs)
        for expo, val in other.coeffs.items():
            out[expo] = out.get(expo, SymbolicExpr.zero()) + val
        return TruncatedSeries(self.vars, self.order, out)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(
            self.vars, self.order, {e: -v for e, v in self.coeffs.items()}
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_compatible(other)
        out: dict[tuple[int, ...], SymbolicExpr] = {}
        for e1, v1 in self.coeffs.items():
            for e2, v2 in other.coeffs.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                if sum(expo) > self.order:
                    continue
                prod = v1 * v2
                acc = out.get(expo)
                out[expo] = prod if acc is None else acc + prod
        return TruncatedSeries(self.vars, self.order, out)

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries(
            self.vars, self.order, {e: v * c for e, v in self.coeffs.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.vars == other.vars
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    # -- queries -----------------------------------------------------------

    def coefficient(self, *expo: int) -> SymbolicExpr:
        if len(expo) != len(self.vars):
            raise ValueError("exponent arity mismatch")
        return self.coeffs.get(tuple(expo), SymbolicExpr.zero())

    def constant_term(self) -> SymbolicExpr:
        return self.coefficient(*((0,) * len(self.vars)))

    def has_symbol(self, predicate) -> bool:
        return any(
            predicate(s) for v in self.coeffs.values() for s in v.symbols()
        )

    # -- analytic kernels ----------------------------------------------------

    def exp(self) -> "TruncatedSeries":
        """exp of a series with zero constant term, truncated."""
        if self.constant_term():
            raise ValueError("series exp requires zero constant term")
        out = TruncatedSeries.constant(1, self.vars, self.order)
        power = TruncatedSeries.constant(1, self.vars, self.order)
        for k in range(1, self.order + 1):
            power = power * self
            if not power.coeffs:
                break
            out = out + power.scale(Fraction(1, math.factorial(k)))
        return out


def series_arith(a: TruncatedSeries, b: TruncatedSeries, op: str) -> TruncatedSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown series operation {op!r}")


def loggamma_at_1(s: TruncatedSeries) -> TruncatedSeries:
    """log Gamma(1 + s) = -EulerGamma*s + sum_{j>=2} (-1)^j Zeta[j] s^j / j."""
    if s.constant_term():
        raise ValueError("log Gamma expansion requires zero constant term")
    out = s.scale(-euler_gamma())
    power = s
    for j in range(2, s.order + 1):
        power = power * s
        if not power.coeffs:
            break
        sign = 1 if j % 2 == 0 else -1
        out = out + power.scale(zeta(j) * Fraction(sign, j))
    return out


def loggamma_at_half(s: TruncatedSeries) -> TruncatedSeries:
    """log Gamma(1/2 + s) expanded around s = 0.

    Equals (1/2)*LogPi + (-EulerGamma - 2*Log2)*s
    + sum_{j>=2} (-1)^j (2^j - 1) Zeta[j] s^j / j.  The constant and the
    transient symbols cancel in every assembled generating function.
    """
    if s.constant_term():
        raise ValueError("log Gamma expansion requires zero constant term")
    out = TruncatedSeries.constant(log_pi() * Fraction(1, 2), s.vars, s.order)
    out = out + s.scale(-euler_gamma() - 2 * log2_expr())
    power = s
    for j in range(2, s.order + 1):
        power = power * s
        if not power.coeffs:
            break
        sign = 1 if j % 2 == 0 else -1
        out = out + power.scale(zeta(j) * Fraction(sign * (2**j - 1), j))
    return out


def binom_central_series(order: int) -> TruncatedSeries:
    """Expansion of Gamma(1+L) / (Gamma(1+L/2+M) Gamma(1+L/2-M)).

    Bivariate in (L, M) to the given total order.  The EulerGamma
    contributions cancel identically, which is asserted; the result is
    even in M.
    """
    vars = ("L", "M")
    lam = TruncatedSeries.variable("L", vars, order)
    mu = TruncatedSeries.variable("M", vars, order)
    half_lam = lam.scale(Fraction(1, 2))
    log_quot = (
        loggamma_at_1(lam)
        - loggamma_at_1(half_lam + mu)
        - loggamma_at_1(half_lam - mu)
    )
    assert not log_quot.has_symbol(
        lambda sym: sym.is_transient
    ), "EulerGamma failed to cancel in the central-binomial expansion"
    out = log_quot.exp()
    assert all(
        expo[1] % 2 == 0 for expo in out.coeffs
    ), "central-binomial expansion must be even in the second variable"
    return out
