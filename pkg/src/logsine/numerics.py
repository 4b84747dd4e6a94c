"""Arbitrary-precision numerics: the independent oracle for symbolic results.

Log-sine / log-sinh / log-sine-cosine integrals are evaluated by adaptive
tanh-sinh (double-exponential) quadrature, which handles the logarithmic
endpoint singularities at spectral accuracy.  Multiple polylogarithms on
the unit circle are summed by a nested-prefix-sum recursion with an
iterated Abel (summation-by-parts) tail; Nielsen-shaped indices also have
a geometrically convergent log-kernel quadrature representation which is
used for multiple zeta values and for high-precision table verification.

All evaluators are deterministic: identical inputs and budgets give
bit-identical outputs.  Precision is managed through the process-global
mpmath context, so concurrent use belongs in separate processes, not
threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .algebra import (
    KIND_CL,
    KIND_GAMMA,
    KIND_GL,
    KIND_LI_M1,
    KIND_LI_PT,
    KIND_LOG2,
    KIND_LOGPI,
    KIND_PI,
    KIND_T,
    KIND_ZETA,
    POINT_EXP_NEG_T,
    POINT_RHO_SQ_INV,
    ConstSymbol,
    SymbolicExpr,
)
from .queries import LsQuery, LshQuery, LscQuery

__all__ = [
    "BudgetError",
    "PrecisionBudget",
    "tanh_sinh_quad",
    "ls_numeric",
    "lsh_numeric",
    "lsc_numeric",
    "polylog_unit_circle",
    "polylog_real",
    "nielsen_point",
    "gl41_pi3_fast",
    "expr_numeric",
    "verify",
]


class BudgetError(Exception):
    """The requested precision is not reachable within the configured limits."""


@dataclass(frozen=True)
class PrecisionBudget:
    """Target precision plus the derived working parameters.

    The working precision always carries at least a 15-digit guard over the
    requested target; series and quadrature cutoffs derive from it.
    """

    target_digits: int = 30
    guard_digits: int = 15
    series_max_terms: int = 2_000_000
    abel_depth: int = 8
    max_quad_level: int = 12
    use_binomial_fast_paths: bool = False

    def __post_init__(self):
        if self.target_digits < 1:
            raise ValueError("target_digits must be positive")
        if self.guard_digits < 15:
            raise ValueError("guard must be at least 15 digits")

    @property
    def working_dps(self) -> int:
        return self.target_digits + self.guard_digits

    def tolerance(self) -> mp.mpf:
        return mp.mpf(10) ** (-(self.target_digits + 5))

    def bumped(self, extra: int) -> "PrecisionBudget":
        return PrecisionBudget(
            self.target_digits + extra,
            self.guard_digits,
            self.series_max_terms,
            self.abel_depth,
            self.max_quad_level,
            self.use_binomial_fast_paths,
        )


def _frac_to_mpf(q: Fraction) -> mp.mpf:
    return mp.mpf(q.numerator) / q.denominator


# -- tanh-sinh quadrature -----------------------------------------------------

# Node cache keyed by (dps, level): level 0 holds the t = k*h lattice for
# h = 1; level L >= 1 holds the new nodes at odd multiples of h = 2^-L.
# Each entry is a list of (delta, weight) with delta the distance of the
# positive node from +1, so integrands can be evaluated accurately against
# the nearest endpoint.
_node_cache: dict[tuple[int, int], list[tuple[mp.mpf, mp.mpf]]] = {}


def _nodes(dps: int, level: int) -> list[tuple[mp.mpf, mp.mpf]]:
    key = (dps, level)
    cached = _node_cache.get(key)
    if cached is not None:
        return cached
    with mp.workdps(dps):
        h = mp.mpf(2) ** (-level)
        eps = mp.mpf(10) ** (-dps - 5)
        out = []
        k = 1 if level == 0 else 1
        step = 1 if level == 0 else 2
        # level 0 also contributes the center node t = 0 handled by caller
        while True:
            t = k * h
            u = mp.pi / 2 * mp.sinh(t)
            w = mp.pi / 2 * mp.cosh(t) / mp.cosh(u) ** 2
            delta = 2 / (1 + mp.exp(2 * u))
            out.append((delta, w))
            if w < eps and k * h > 3:
                break
            k += step
        _node_cache[key] = out
        return out


def tanh_sinh_quad(f, a, b, budget: PrecisionBudget):
    """Integrate ``f`` over (a, b) with endpoint singularities allowed.

    The level is doubled adaptively until two successive levels agree to
    target + 5 digits.  ``f`` is called as ``f(x, dl, dr)`` where dl and
    dr are the accurately computed distances of x from a and b; integrands
    singular at an endpoint must use the corresponding distance instead of
    re-deriving it from x, which would cancel catastrophically.
    """
    dps = budget.working_dps
    with mp.workdps(dps):
        a = mp.mpf(a) if not isinstance(a, (mp.mpf, mp.mpc)) else a
        b = mp.mpf(b) if not isinstance(b, (mp.mpf, mp.mpc)) else b
        radius = (b - a) / 2
        width = b - a
        center = (a + b) / 2
        if radius == 0:
            return mp.mpf(0)
        tol = budget.tolerance()

        def eval_pair(delta):
            # symmetric nodes at distance radius*delta from each endpoint
            d = radius * delta
            far = width - d
            return f(a + d, d, far) + f(b - d, far, d)

        total = mp.pi / 2 * f(center, radius, radius)  # t = 0 node
        for delta, w in _nodes(dps, 0):
            total += w * eval_pair(delta)
        prev = total  # h = 1 estimate
        h = mp.mpf(1)
        estimate = None
        for level in range(1, budget.max_quad_level + 1):
            h = h / 2
            for delta, w in _nodes(dps, level):
                total += w * eval_pair(delta)
            estimate = total * h * radius
            if level >= 2:
                if abs(estimate - prev) <= tol * max(1, abs(estimate)):
                    return estimate
            prev = estimate
        raise BudgetError(
            f"tanh-sinh quadrature did not reach {budget.target_digits} digits "
            f"within level {budget.max_quad_level}"
        )


def _ls_panels(sigma: mp.mpf) -> list[tuple[mp.mpf, mp.mpf, str | None]]:
    """Panels covering 0..sigma, cut at multiples of pi.

    Each panel records on which side (if any) the sine factor vanishes,
    i.e. which endpoint lies at an even multiple of pi, so the integrand
    can be formed from the accurate endpoint distance there.
    """
    pad = mp.mpf(10) ** (-mp.mp.dps + 5)
    direction = 1 if sigma > 0 else -1
    size = abs(sigma)
    panels = []
    m = 0
    while True:
        lo_mult = m
        lo = direction * m * mp.pi
        if (m + 1) * mp.pi < size - pad:
            hi = direction * (m + 1) * mp.pi
            full = True
        else:
            hi = sigma
            full = abs(size - (m + 1) * mp.pi) <= pad
        # even multiples of pi are the zeros of 2 sin(theta/2)
        if lo_mult % 2 == 0:
            sing = "lo"
        elif full:
            sing = "hi"
        else:
            sing = None
        if direction > 0:
            panels.append((lo, hi, {"lo": "left", "hi": "right", None: None}[sing]))
        else:
            # reversed orientation: integrate over [hi, lo] and negate later
            panels.append((hi, lo, {"lo": "right", "hi": "left", None: None}[sing]))
        if not full or abs(hi) >= size - pad:
            break
        m += 1
    return panels


def ls_numeric(n: int, k: int, sigma, budget: PrecisionBudget) -> mp.mpf:
    """Numeric Ls value: -integral_0^sigma theta^k log^{n-1-k}|2 sin(theta/2)|.

    Any real sigma is accepted; the interval is cut at multiples of pi so
    each logarithmic singularity sits at a panel endpoint, where the sine
    factor is rebuilt from the endpoint distance (|2 sin(theta/2)| equals
    2 sin(eps/2) at distance eps from an even multiple of pi).
    """
    if not 1 <= n or not 0 <= k <= n - 1:
        raise ValueError("require n >= 1 and 0 <= k <= n-1")
    p = n - 1 - k
    with mp.workdps(budget.working_dps):
        sigma = mp.mpf(sigma)
        if sigma == 0:
            return mp.mpf(0)
        total = mp.mpf(0)
        for lo, hi, sing in _ls_panels(sigma):

            def integrand(theta, dl, dr, sing=sing):
                if p:
                    if sing == "left":
                        body = 2 * mp.sin(dl / 2)
                    elif sing == "right":
                        body = 2 * mp.sin(dr / 2)
                    else:
                        body = abs(2 * mp.sin(theta / 2))
                    val = mp.log(body) ** p
                else:
                    val = mp.mpf(1)
                if k:
                    val *= theta**k
                return val

            total += tanh_sinh_quad(integrand, lo, hi, budget)
        if sigma < 0:
            total = -total
        return -total


def lsh_numeric(n: int, k: int, t, budget: PrecisionBudget) -> mp.mpf:
    """Numeric log-sinh value: -integral_0^t theta^k log^{n-1-k}|2 sinh(theta/2)|."""
    if not 1 <= n or not 0 <= k <= n - 1:
        raise ValueError("require n >= 1 and 0 <= k <= n-1")
    p = n - 1 - k
    with mp.workdps(budget.working_dps):
        t = mp.mpf(t)
        if t <= 0:
            raise ValueError("log-sinh integrals require t > 0")

        def integrand(theta, dl, dr):
            # panel starts at 0, so theta equals the accurate left distance
            val = mp.log(2 * mp.sinh(dl / 2)) ** p if p else mp.mpf(1)
            if k:
                val *= theta**k
            return val

        return -tanh_sinh_quad(integrand, mp.mpf(0), t, budget)


def lsc_numeric(m: int, n: int, budget: PrecisionBudget) -> mp.mpf:
    """Numeric log-sine-cosine value at pi (both endpoint logs singular)."""
    if m < 1 or n < 1:
        raise ValueError("require m, n >= 1")
    ps, pc = m - 1, n - 1
    with mp.workdps(budget.working_dps):

        def integrand(theta, dl, dr):
            # 2 sin(theta/2) = 2 sin(dl/2) and 2 cos(theta/2) = 2 sin(dr/2)
            # on [0, pi]; both forms stay accurate at their endpoint.
            val = mp.mpf(1)
            if ps:
                val *= mp.log(2 * mp.sin(dl / 2)) ** ps
            if pc:
                val *= mp.log(2 * mp.sin(dr / 2)) ** pc
            return val

        return -tanh_sinh_quad(integrand, mp.mpf(0), mp.pi, budget)


# -- multiple polylogarithm series -------------------------------------------


def _check_index(index: tuple[int, ...]) -> None:
    if not index or any(a < 1 for a in index):
        raise ValueError(f"invalid index {index}")


def _series_state(index: tuple[int, ...]):
    """Nested-prefix-sum accumulators for the inner harmonic weights."""
    depth = len(index)
    return [mp.mpf(1) if j == 0 else mp.mpf(0) for j in range(depth)]


def _advance(state, index, n: int) -> mp.mpf:
    """Return c_n = W(n)/n^{a_1} and update the prefix sums past n."""
    depth = len(index)
    c = state[depth - 1] / mp.mpf(n) ** index[0]
    # V_j(n+1) = V_j(n) + V_{j-1}(n)/n^{a_{depth-j+1}}, updated deepest-first
    for j in range(depth - 1, 0, -1):
        state[j] += state[j - 1] / mp.mpf(n) ** index[depth - j]
    return c


def polylog_unit_circle(
    index, q, budget: PrecisionBudget
) -> tuple[mp.mpf, mp.mpf]:
    """(Re, Im) of the multiple polylogarithm at exp(i*pi*q), 0 < q < 2.

    Partial sums use the O(depth * N) prefix-sum recursion; the tail is
    accelerated by iterated summation by parts, which contributes one
    1/(1-z) factor per iteration.  The recorded tail bound must fall below
    the budget tolerance or the evaluation fails explicitly.
    """
    index = tuple(index)
    _check_index(index)
    if index[0] < 2:
        raise ValueError("leading index must be >= 2 on the unit circle")
    q = Fraction(q)
    if not 0 < q < 2:
        raise ValueError("require 0 < q < 2 so that z != 1")
    d = budget.abel_depth
    with mp.workdps(budget.working_dps):
        z = mp.expjpi(_frac_to_mpf(q))
        one_minus_z = 1 - z
        tol = budget.tolerance()
        state = _series_state(index)
        partial = mp.mpc(0)
        zpow = mp.mpc(1)
        n = 0
        target_n = 256
        while True:
            while n < target_n:
                n += 1
                zpow *= z
                partial += zpow * _advance(state, index, n)
            # window of plain coefficients c_{n+1} .. c_{n+d}
            window = []
            wstate = [v for v in state]
            for j in range(1, d + 1):
                window.append(_advance(wstate, index, n + j))
            tail, bound = _abel_tail(window, z, one_minus_z, zpow, d)
            if bound <= tol:
                value = partial + tail
                return (value.real, value.imag)
            if 2 * target_n > budget.series_max_terms:
                raise BudgetError(
                    f"polylog series needs more than {budget.series_max_terms} "
                    f"terms for {budget.target_digits} digits at q={q}"
                )
            target_n *= 2


def _abel_tail(window, z, one_minus_z, zpow_n, d):
    """Iterated summation by parts for sum_{n>N} c_n z^n.

    ``window`` holds c_{N+1}..c_{N+d}; ``zpow_n`` is z^N.  Returns the
    accelerated tail and the recorded bound |Delta^{d-1} c_{N+d}|/|1-z|^d
    (padded by a small safety factor).
    """
    # forward table of backward differences: diffs[j][i] = Delta^j c_{N+1+j+i}
    diffs = [list(window)]
    for j in range(1, d):
        prev = diffs[-1]
        diffs.append([prev[i + 1] - prev[i] for i in range(len(prev) - 1)])
    tail = mp.mpc(0)
    zp = zpow_n
    for j in range(d):
        zp = zp * z  # z^{N+1+j}
        tail += diffs[j][0] * zp / one_minus_z ** (j + 1)
    bound = 4 * abs(diffs[d - 1][-1]) / abs(one_minus_z) ** d
    return tail, mp.mpf(bound)


def polylog_real(index, x, budget: PrecisionBudget) -> mp.mpf:
    """Multiple polylogarithm at a real point 0 < x < 1 by direct summation."""
    index = tuple(index)
    _check_index(index)
    with mp.workdps(budget.working_dps):
        x = mp.mpf(x)
        if not 0 < x < 1:
            raise ValueError("require 0 < x < 1")
        tol = budget.tolerance()
        state = _series_state(index)
        total = mp.mpf(0)
        xpow = mp.mpf(1)
        cutoff = tol * (1 - x) / 4
        n = 0
        while True:
            n += 1
            xpow *= x
            term = xpow * _advance(state, index, n)
            total += term
            if term < cutoff and n > 8:
                return total
            if n > budget.series_max_terms:
                raise BudgetError("real polylog series exceeded the term ceiling")


def nielsen_point(a1: int, ones: int, z, budget: PrecisionBudget):
    """Nielsen-shaped polylogarithm Li_{a1,{1}^ones}(z) by log-kernel quadrature.

    Uses the classical single-integral representation with kernel
    log^{a1-2}(t) log^{ones+1}(1 - z t) / t, which converges geometrically
    under tanh-sinh quadrature for any z on the closed unit disk (z = 1
    included).  Serves as the high-precision fast path for table
    verification and for multiple zeta values.
    """
    if a1 < 2 or ones < 0:
        raise ValueError("require a1 >= 2 and ones >= 0")
    nn = a1 - 1
    pp = ones + 1
    with mp.workdps(budget.working_dps):
        z = mp.mpc(z) if mp.im(z) != 0 else +mp.re(z)
        sign = (-1) ** (nn + pp - 1)
        norm = mp.mpf(sign) / (mp.factorial(nn - 1) * mp.factorial(pp))
        one_minus_z = 1 - z

        def integrand(t, dl, dr):
            # 1 - z*t = (1-z) + z*dr stays accurate near t = 1 (incl. z = 1)
            val = mp.log(one_minus_z + z * dr) ** pp / t
            if nn >= 2:
                val *= mp.log(t) ** (nn - 1)
            return val

        return norm * tanh_sinh_quad(integrand, mp.mpf(0), mp.mpf(1), budget)


def gl41_pi3_fast(budget: PrecisionBudget) -> mp.mpf:
    """Glaisher value of index (4,1) at pi/3 via its central-binomial sum form.

    Equals (3341/1632960) pi^5 - zeta(3)^2/pi
    - (3/(4 pi)) * sum_{n>=1} 1/(binom(2n,n) n^6); the sum converges at
    geometric rate 1/4.
    """
    with mp.workdps(budget.working_dps):
        tol = mp.mpf(10) ** (-budget.working_dps - 2)
        total = mp.mpf(0)
        binom = 2  # binom(2n, n) at n = 1
        n = 1
        while True:
            term = mp.mpf(1) / (mp.mpf(binom) * mp.mpf(n) ** 6)
            total += term
            if term < tol:
                break
            n += 1
            binom = binom * (2 * n - 1) * (2 * n) // (n * n)
        pi = mp.pi
        return (
            mp.mpf(3341) / 1632960 * pi**5
            - mp.zeta(3) ** 2 / pi
            - 3 / (4 * pi) * total
        )


# -- symbol evaluation --------------------------------------------------------

_symbol_cache: dict[tuple, mp.mpf] = {}


def clear_caches() -> None:
    _symbol_cache.clear()
    _node_cache.clear()


def _li_on_circle(index, q: Fraction, budget: PrecisionBudget):
    """(Re, Im) of Li_index(e^{i pi q}) choosing series or kernel quadrature.

    The accelerated series is the default route up to 35 digits; beyond
    that the geometric log-kernel quadrature is much cheaper for the
    Nielsen-shaped indices this pipeline produces.
    """
    nielsen = all(a == 1 for a in index[1:])
    if nielsen and budget.target_digits > 35:
        z = mp.expjpi(_frac_to_mpf(q))
        val = nielsen_point(index[0], len(index) - 1, z, budget)
        return (mp.re(val), mp.im(val))
    try:
        return polylog_unit_circle(index, q, budget)
    except BudgetError:
        if not nielsen:
            raise
        z = mp.expjpi(_frac_to_mpf(q))
        val = nielsen_point(index[0], len(index) - 1, z, budget)
        return (mp.re(val), mp.im(val))


def _eval_symbol(sym: ConstSymbol, budget: PrecisionBudget, bindings) -> mp.mpf:
    key = (sym.sort_key(), budget.working_dps, budget.use_binomial_fast_paths)
    if sym.kind == KIND_T or (
        sym.kind == KIND_LI_PT and sym.point == POINT_EXP_NEG_T
    ):
        key = key + (str(bindings),)
    cached = _symbol_cache.get(key)
    if cached is not None:
        return cached
    value = _eval_symbol_uncached(sym, budget, bindings)
    _symbol_cache[key] = value
    return value


def _eval_symbol_uncached(sym: ConstSymbol, budget: PrecisionBudget, bindings):
    if sym.kind == KIND_PI:
        return +mp.pi
    if sym.kind == KIND_LOG2:
        return mp.log(2)
    if sym.kind == KIND_LOGPI:
        return mp.log(mp.pi)
    if sym.kind == KIND_GAMMA:
        return +mp.euler
    if sym.kind == KIND_T:
        if not bindings or "t" not in bindings:
            raise ValueError("unbound formal parameter t in numeric evaluation")
        return mp.mpf(bindings["t"])
    if sym.kind == KIND_ZETA:
        if len(sym.index) == 1:
            return mp.zeta(sym.index[0])
        if any(a != 1 for a in sym.index[1:]):
            raise NotImplementedError(
                "only Nielsen-shaped multiple zeta values occur in this pipeline"
            )
        val = nielsen_point(sym.index[0], len(sym.index) - 1, mp.mpf(1), budget)
        return mp.re(val)
    if sym.kind == KIND_LI_M1:
        re, im = _li_on_circle(sym.index, Fraction(1), budget)
        return re
    if sym.kind in (KIND_CL, KIND_GL):
        if (
            budget.use_binomial_fast_paths
            and sym.kind == KIND_GL
            and sym.index == (4, 1)
            and sym.angle == Fraction(1, 3)
        ):
            return gl41_pi3_fast(budget)
        re, im = _li_on_circle(sym.index, sym.angle, budget)
        weight = sum(sym.index)
        if sym.kind == KIND_CL:
            return im if weight % 2 == 0 else re
        return re if weight % 2 == 0 else im
    if sym.kind == KIND_LI_PT:
        if sym.point == POINT_RHO_SQ_INV:
            x = 1 / ((1 + mp.sqrt(5)) / 2) ** 2
        elif sym.point == POINT_EXP_NEG_T:
            if not bindings or "t" not in bindings:
                raise ValueError("unbound formal parameter t in numeric evaluation")
            x = mp.exp(-mp.mpf(bindings["t"]))
        else:
            raise ValueError(f"unknown evaluation point tag {sym.point!r}")
        return polylog_real(sym.index, x, budget)
    raise ValueError(f"cannot evaluate symbol kind {sym.kind}")


def expr_numeric(
    e: SymbolicExpr,
    budget: PrecisionBudget,
    bindings: dict | None = None,
    allow_transient: bool = False,
):
    """Evaluate a symbolic expression numerically to the budget target.

    Transient symbols are rejected unless explicitly allowed (they never
    appear in user-facing results); a formal t must be bound.  Returns an
    mpf for real-coefficient expressions, an mpc otherwise.
    """
    if not allow_transient and e.has_transient():
        raise ValueError("expression contains transient symbols")
    with mp.workdps(budget.working_dps):
        total_re = mp.mpf(0)
        total_im = mp.mpf(0)
        complex_coeffs = False
        for mono, coeff in sorted(
            e.terms.items(), key=lambda kv: tuple((s.sort_key(), p) for s, p in kv[0])
        ):
            prod = mp.mpf(1)
            for s, power in mono:
                prod *= _eval_symbol(s, budget, bindings) ** power
            cre = _frac_to_mpf(coeff.re)
            total_re += cre * prod
            if coeff.im != 0:
                complex_coeffs = True
                total_im += _frac_to_mpf(coeff.im) * prod
        if complex_coeffs:
            return mp.mpc(total_re, total_im)
        return total_re


def verify(query, e: SymbolicExpr, budget: PrecisionBudget, bindings=None):
    """|numeric integral of the query - numeric value of the expression|."""
    with mp.workdps(budget.working_dps):
        if isinstance(query, LsQuery):
            sigma = _frac_to_mpf(query.q) * mp.pi
            lhs = ls_numeric(query.n, query.k, sigma, budget)
        elif isinstance(query, LshQuery):
            tval = _lsh_t_value(query, bindings)
            lhs = lsh_numeric(query.n, query.k, tval, budget)
            if bindings is None and tval is not None:
                bindings = {"t": tval}
        elif isinstance(query, LscQuery):
            lhs = lsc_numeric(query.m, query.n, budget)
        else:
            raise TypeError(f"unsupported query type {type(query).__name__}")
        rhs = expr_numeric(e, budget, bindings)
        return abs(lhs - rhs)


def _lsh_t_value(query: LshQuery, bindings):
    if query.t is not None:
        if query.t == "2*log(rho)":
            return 2 * mp.log((1 + mp.sqrt(5)) / 2)
        if isinstance(query.t, Fraction):
            return _frac_to_mpf(query.t)
        return mp.mpf(query.t)
    if bindings and "t" in bindings:
        return mp.mpf(bindings["t"])
    raise ValueError("log-sinh verification requires a concrete t")
