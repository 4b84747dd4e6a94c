"""Evaluation at general angles tau = q*pi and at imaginary arguments.

A polylogarithm identity links each log-sine value to multiple Clausen
and Glaisher values at tau plus a binomial combination of log-sine values
of strictly smaller order difference n - k.  Recursing on that difference
(base case: the elementary power evaluation at k = n - 1) and solving
each identity for its single unknown yields closed forms over pi, zeta,
Cl and Gl symbols at the angle.

Since the unknown value is real and enters with coefficient i^{k+1}
times a rational, only one component (real for odd k, imaginary for even
k) of the complex identity determines it; the complementary component is
an identity among known quantities, recorded so callers can assert that
it vanishes numerically.

The imaginary-argument (log-sinh) analogue is structurally identical but
real throughout, producing polylogarithms at the formal point exp(-t).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .algebra import (
    GaussianRational,
    IMAG_UNIT,
    POINT_EXP_NEG_T,
    POINT_RHO_SQ_INV,
    KIND_LI_PT,
    KIND_T,
    ConstSymbol,
    SymbolicExpr,
    clausen,
    formal_t,
    glaisher,
    li_point,
    pi_expr,
    zeta,
)
from .queries import LsQuery

__all__ = [
    "split_cl_gl",
    "ls_polylog_identity",
    "ls_general",
    "ls_general_residual",
    "lsh",
    "lsh_at_golden",
]


def split_cl_gl(index, q) -> tuple[SymbolicExpr, SymbolicExpr]:
    """(real part, imaginary part) of Li_index(e^{i pi q}) as Cl/Gl symbols.

    Clausen carries the imaginary part at even weight and the real part at
    odd weight; Glaisher the complement.
    """
    index = tuple(index)
    q = Fraction(q)
    cl = clausen(index, q)
    gl = glaisher(index, q)
    if sum(index) % 2 == 0:
        return gl, cl
    return cl, gl


def _li_circle_expr(index, q) -> SymbolicExpr:
    re, im = split_cl_gl(index, q)
    return re + SymbolicExpr.from_scalar(IMAG_UNIT) * im


def _dual_zeta(a: int, ones: int) -> SymbolicExpr:
    """zeta(a, {1}^ones) in its canonical (depth-minimal) dual form."""
    if ones + 2 > a:
        a, ones = ones + 2, a - 2
    return zeta(*((a,) + (1,) * ones))


def _multinom(n: int, parts: tuple[int, ...]) -> int:
    rest = n - sum(parts)
    if rest < 0:
        return 0
    out = math.factorial(n)
    for p in parts:
        out //= math.factorial(p)
    return out // math.factorial(rest)


def ls_polylog_identity(n: int, k: int, q: Fraction):
    """Both sides of the defining identity for Ls values at tau = q*pi.

    Returns (lhs, rhs_terms): the left side as an expression over zeta
    and Cl/Gl symbols at q (complex Gaussian coefficients), and the right
    side as a list of (coefficient expression, LsQuery) pairs.  Requires
    n - k >= 2; tau powers fold into q^j pi^j immediately.
    """
    if n - k < 2:
        raise ValueError("identity requires n - k >= 2")
    q = Fraction(q)
    lhs = _dual_zeta(n - k, k)
    ones = n - k - 2
    for j in range(0, k + 1):
        cj = (
            (-IMAG_UNIT) ** j
            * GaussianRational.coerce(Fraction(q.numerator**j, q.denominator**j))
            / Fraction(math.factorial(j))
        )
        li = _li_circle_expr((2 + k - j,) + (1,) * ones, q)
        lhs = lhs - SymbolicExpr.from_scalar(cj) * pi_expr(j) * li
    pre = (IMAG_UNIT ** (k + 1)) * Fraction((-1) ** (n - 1), math.factorial(n - 1))
    rhs_terms = []
    for r in range(0, n - k):
        for m in range(0, r + 1):
            mult = _multinom(n - 1, (k, m, r - m))
            if mult == 0:
                continue
            coeff = (
                pre
                * mult
                * (IMAG_UNIT**r)
                * Fraction(1, 2**r)
                * Fraction((-1) ** (r - m))
            )
            coeff_expr = SymbolicExpr.from_scalar(coeff) * pi_expr(r - m)
            rhs_terms.append((coeff_expr, LsQuery(n - (r - m), k + m, q)))
    return lhs, rhs_terms


_memo: dict[tuple, SymbolicExpr] = {}
_residuals: dict[tuple, SymbolicExpr] = {}


def ls_general(n: int, k: int, q, allow_wide: bool = False) -> SymbolicExpr:
    """Closed form of the log-sine value at tau = q*pi over Cl/Gl at q.

    The default pipeline requires 0 < q <= 1 (angles up to pi); angles in
    (1, 2] apply the identity directly only behind ``allow_wide``, which
    exists for cross-checking against the argument-reduction route.
    """
    if n < 1 or not 0 <= k <= n - 1:
        raise ValueError(f"require 1 <= n and 0 <= k <= n-1, got (n={n}, k={k})")
    q = Fraction(q)
    limit = 2 if allow_wide else 1
    if not 0 < q <= limit:
        raise ValueError(
            f"angle q={q} outside (0, {limit}]; reduce the argument first"
        )
    key = (n, k, q)
    cached = _memo.get(key)
    if cached is not None:
        return cached
    if k == n - 1:
        value = pi_expr(n) * Fraction(-(q.numerator**n), q.denominator**n * n)
        residual = SymbolicExpr.zero()
    else:
        lhs, rhs_terms = ls_polylog_identity(n, k, q)
        known = lhs
        unknown_coeff = None
        for coeff_expr, sub in rhs_terms:
            if (sub.n, sub.k) == (n, k):
                ((mono, c),) = coeff_expr.terms.items()
                assert mono == ()
                unknown_coeff = c
                continue
            known = known - coeff_expr * ls_general(sub.n, sub.k, q, allow_wide)
        assert unknown_coeff is not None
        if k % 2 == 1:
            # i^{k+1} real: the real component determines the unknown
            assert unknown_coeff.im == 0
            value = known.real_component() / unknown_coeff.re
            residual = known.imag_component()
        else:
            assert unknown_coeff.re == 0
            value = known.imag_component() / unknown_coeff.im
            residual = known.real_component()
        assert value.is_real()
    _memo[key] = value
    _residuals[key] = residual
    return value


def ls_general_residual(n: int, k: int, q, allow_wide: bool = False) -> SymbolicExpr:
    """Complementary component of the solved identity; vanishes numerically."""
    q = Fraction(q)
    ls_general(n, k, q, allow_wide)
    return _residuals[(n, k, q)]


# -- log-sinh integrals ---------------------------------------------------------

_lsh_memo: dict[tuple, SymbolicExpr] = {}


def lsh(n: int, k: int) -> SymbolicExpr:
    """Closed form of the log-sinh value with a formal parameter t.

    Output lives over t, zeta symbols, and polylogarithms at exp(-t); the
    recursion runs over increasing theta power at fixed weight, with the
    elementary base case at k = n - 1.
    """
    if n < 1 or not 0 <= k <= n - 1:
        raise ValueError(f"require 1 <= n and 0 <= k <= n-1, got (n={n}, k={k})")
    key = (n, k)
    cached = _lsh_memo.get(key)
    if cached is not None:
        return cached
    if k == n - 1:
        value = formal_t() ** n * Fraction(-1, n)
    else:
        ones = n - k - 2
        lhs = _dual_zeta(n - k, k)
        for j in range(0, k + 1):
            li = li_point((2 + k - j,) + (1,) * ones, POINT_EXP_NEG_T)
            lhs = lhs - formal_t() ** j * li * Fraction(1, math.factorial(j))
        pre = Fraction((-1) ** (n + k), math.factorial(n - 1))
        unknown_coeff = None
        known = lhs
        for r in range(0, n - k):
            mult = _multinom(n - 1, (k, r))
            coeff = pre * mult * Fraction((-1) ** r, 2**r)
            if r == 0:
                unknown_coeff = coeff
                continue
            known = known - lsh(n, k + r) * coeff
        value = known / unknown_coeff
    _lsh_memo[key] = value
    return value


def lsh_at_golden(n: int, k: int) -> SymbolicExpr:
    """Log-sinh value at t = 2 log(rho), rho the golden mean.

    Substitutes t -> 2 log(rho) and exp(-t) -> rho^-2; log(rho) itself is
    carried as the depth-1 polylogarithm Li_1(rho^-2).
    """
    log_rho = li_point((1,), POINT_RHO_SQ_INV)

    def sub(sym: ConstSymbol) -> SymbolicExpr:
        if sym.kind == KIND_T:
            return 2 * log_rho
        if sym.kind == KIND_LI_PT and sym.point == POINT_EXP_NEG_T:
            return li_point(sym.index, POINT_RHO_SQ_INV)
        return SymbolicExpr.from_symbol(sym)

    return lsh(n, k).map_symbols(sub)
