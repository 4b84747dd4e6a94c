"""Quadrature, series, and evaluator checks against independent oracles.

Reference values here are recomputed by brute force (direct partial sums
with crude tail bounds) rather than quoted, so the accelerated paths are
tested against genuinely independent arithmetic.
"""

from fractions import Fraction

import mpmath as mp
import pytest

from conftest import assert_close
from logsine.algebra import (
    SymbolicExpr,
    clausen,
    euler_gamma,
    formal_t,
    glaisher,
    li_minus_one,
    li_point,
    pi_expr,
    zeta,
)
from logsine.numerics import (
    BudgetError,
    PrecisionBudget,
    expr_numeric,
    gl41_pi3_fast,
    ls_numeric,
    lsc_numeric,
    lsh_numeric,
    nielsen_point,
    polylog_real,
    polylog_unit_circle,
    tanh_sinh_quad,
    verify,
)
from logsine.queries import LsQuery, LscQuery, LshQuery

B30 = PrecisionBudget(30)
B40 = PrecisionBudget(40)


def brute_li_circle(index, q, terms):
    """Direct partial sum of Li_index(e^{i pi q}); independent reference."""
    with mp.workdps(30):
        z = mp.expjpi(mp.mpf(q.numerator) / q.denominator)
        state = [mp.mpf(1) if j == 0 else mp.mpf(0) for j in range(len(index))]
        total = mp.mpc(0)
        zpow = mp.mpc(1)
        depth = len(index)
        for n in range(1, terms + 1):
            zpow *= z
            total += zpow * state[depth - 1] / mp.mpf(n) ** index[0]
            for j in range(depth - 1, 0, -1):
                state[j] += state[j - 1] / mp.mpf(n) ** index[depth - j]
        return total


class TestTanhSinh:
    def test_polynomial(self):
        val = tanh_sinh_quad(lambda x, dl, dr: x * x, 0, 1, B30)
        with mp.workdps(45):
            assert_close(val, mp.mpf(1) / 3, 30)

    def test_log_endpoint_singularity(self):
        val = tanh_sinh_quad(lambda x, dl, dr: mp.log(dl), 0, 1, B30)
        assert_close(val, -1, 30)

    def test_log_squared(self):
        val = tanh_sinh_quad(lambda x, dl, dr: mp.log(dl) ** 2, 0, 1, B40)
        assert_close(val, 2, 40)


class TestLsNumeric:
    def test_trivial_integrand(self):
        with mp.workdps(45):
            sigma = mp.mpf(7) / 5
            assert_close(ls_numeric(1, 0, sigma, B30), -sigma, 28)

    def test_ls2_pi_vanishes(self):
        with mp.workdps(45):
            assert_close(ls_numeric(2, 0, mp.pi, B30), 0, 28)

    def test_ls3_pi(self):
        with mp.workdps(45):
            assert_close(ls_numeric(3, 0, mp.pi, B30), -mp.pi**3 / 12, 28)

    def test_interval_split_beyond_pi(self):
        with mp.workdps(45):
            for n in (3, 5):
                whole = ls_numeric(n, 0, 2 * mp.pi, B30)
                half = ls_numeric(n, 0, mp.pi, B30)
                assert_close(whole, 2 * half, 27)

    def test_negative_argument_direct_integration(self):
        # computed by integrating over [-sigma, 0], not via the reflection rule
        with mp.workdps(45):
            for k in (0, 1):
                plus = ls_numeric(4, k, mp.pi / 3, B30)
                minus = ls_numeric(4, k, -mp.pi / 3, B30)
                assert_close(minus, (-1) ** (k + 1) * plus, 27)

    def test_ls2_equals_depth1_clausen(self):
        # Ls_2(theta) = Im Li_2(e^{i theta}) for theta in {pi/3, pi/2, 2pi/3}
        with mp.workdps(45):
            for q in (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)):
                theta = mp.pi * q.numerator / q.denominator
                quad = ls_numeric(2, 0, theta, B30)
                series = polylog_unit_circle((2,), q, B30)[1]
                assert_close(quad, series, 29)


class TestLshNumeric:
    def test_trivial(self):
        with mp.workdps(45):
            t = mp.mpf(3) / 2
            for n in (2, 4):
                assert_close(lsh_numeric(n, n - 1, t, B30), -(t**n) / n, 28)

    def test_rejects_nonpositive_t(self):
        with pytest.raises(ValueError):
            lsh_numeric(3, 1, 0, B30)


class TestLscNumeric:
    def test_lsc11(self):
        with mp.workdps(45):
            assert_close(lsc_numeric(1, 1, B30), -mp.pi, 29)

    def test_lsc21_is_ls2(self):
        assert_close(lsc_numeric(2, 1, B30), 0, 28)

    def test_symmetry(self):
        assert_close(lsc_numeric(2, 3, B30), lsc_numeric(3, 2, B30), 27)


class TestPolylogCircle:
    def test_li2_against_brute_force(self):
        re, im = polylog_unit_circle((2,), Fraction(1, 3), B30)
        ref = brute_li_circle((2,), Fraction(1, 3), 100_000)
        # crude oscillatory tail bound ~ 1/N for the reference sum
        assert_close(im, ref.imag, 4)
        assert_close(re, ref.real, 4)

    def test_li31_against_brute_force(self):
        re, im = polylog_unit_circle((3, 1), Fraction(1, 3), B30)
        ref = brute_li_circle((3, 1), Fraction(1, 3), 100_000)
        assert_close(im, ref.imag, 8)
        assert_close(re, ref.real, 8)

    def test_li2_at_minus_one(self):
        re, im = polylog_unit_circle((2,), Fraction(1), B30)
        with mp.workdps(45):
            assert_close(re, -mp.pi**2 / 12, 29)
            assert_close(im, 0, 29)

    def test_matches_nielsen_kernel_route(self):
        q = Fraction(1, 3)
        re, im = polylog_unit_circle((4, 1), q, B40)
        with mp.workdps(60):
            val = nielsen_point(4, 1, mp.expjpi(mp.mpf(1) / 3), B40)
            assert_close(re, val.real, 38)
            assert_close(im, val.imag, 38)

    def test_rejects_z_equal_one(self):
        with pytest.raises(ValueError):
            polylog_unit_circle((2,), Fraction(0), B30)

    def test_budget_ceiling_is_explicit(self):
        tiny = PrecisionBudget(30, series_max_terms=64)
        with pytest.raises(BudgetError):
            polylog_unit_circle((2,), Fraction(1, 64), tiny)


class TestNielsenKernel:
    def test_zeta2(self):
        val = nielsen_point(2, 0, mp.mpf(1), B40)
        with mp.workdps(60):
            assert_close(val, mp.zeta(2), 38)

    def test_zeta_3_1_at_one(self):
        # compare against a brute-force partial sum with explicit tail bound
        val = nielsen_point(3, 1, mp.mpf(1), B40)
        with mp.workdps(40):
            total = mp.mpf(0)
            h = mp.mpf(0)
            for n in range(1, 20001):
                total += h / mp.mpf(n) ** 3
                h += mp.mpf(1) / n
            bound = mp.log(20000) / mp.mpf(20000) ** 2
            assert abs(val - total) < bound

    def test_li2_minus_one(self):
        val = nielsen_point(2, 0, mp.mpf(-1), B30)
        with mp.workdps(45):
            assert_close(val, -mp.pi**2 / 12, 29)


class TestPolylogReal:
    def test_li2_at_half_classical(self):
        # recompute the classical value pi^2/12 - log(2)^2/2 by brute series
        with mp.workdps(40):
            brute = mp.mpf(0)
            x = mp.mpf(1) / 2
            for n in range(1, 140):
                brute += x**n / mp.mpf(n) ** 2
        val = polylog_real((2,), mp.mpf("0.5"), B30)
        assert_close(val, brute, 30)
        with mp.workdps(45):
            assert_close(val, mp.pi**2 / 12 - mp.log(2) ** 2 / 2, 28)

    def test_golden_point_values(self):
        with mp.workdps(60):
            rho = (1 + mp.sqrt(5)) / 2
            x = 1 / rho**2
            li2 = polylog_real((2,), x, B40)
            li3 = polylog_real((3,), x, B40)
            lr = mp.log(rho)
            assert_close(li2, mp.pi**2 / 15 - lr**2, 38)
            ref3 = (
                mp.mpf(4) / 5 * mp.zeta(3)
                - mp.mpf(2) / 15 * mp.pi**2 * lr
                + mp.mpf(2) / 3 * lr**3
            )
            assert_close(li3, ref3, 38)


class TestGl41FastPath:
    def test_agrees_with_series(self):
        fast = gl41_pi3_fast(B40)
        series = polylog_unit_circle((4, 1), Fraction(1, 3), B40)[1]
        assert_close(fast, series, 39)

    def test_partial_sums_monotone(self):
        with mp.workdps(30):
            binom, total, last = 2, mp.mpf(0), mp.mpf(-1)
            for n in range(1, 12):
                total += 1 / (mp.mpf(binom) * mp.mpf(n) ** 6)
                assert total > last
                last = total
                binom = binom * (2 * n + 1) * (2 * n + 2) // ((n + 1) * (n + 1))

    def test_stable_under_extra_digits(self):
        a = gl41_pi3_fast(PrecisionBudget(50))
        b = gl41_pi3_fast(PrecisionBudget(60))
        assert_close(a, b, 50)


class TestExprNumeric:
    def test_pi_cubed_over_12(self):
        val = expr_numeric(pi_expr(3) / 12, B30)
        with mp.workdps(45):
            assert_close(val, mp.pi**3 / 12, 30)

    def test_zero(self):
        assert expr_numeric(SymbolicExpr.zero(), B30) == 0

    def test_gl41_route_config(self):
        e = glaisher((4, 1), Fraction(1, 3))
        plain = expr_numeric(e, B40)
        fast = expr_numeric(e, PrecisionBudget(40, use_binomial_fast_paths=True))
        assert_close(plain, fast, 39)

    def test_clausen_glaisher_parity(self):
        # weight 2: Cl = Im part; weight 3: Cl = Re part
        q = Fraction(1, 3)
        re2, im2 = polylog_unit_circle((2,), q, B30)
        assert_close(expr_numeric(clausen((2,), q), B30), im2, 29)
        assert_close(expr_numeric(glaisher((2,), q), B30), re2, 29)
        re3, im3 = polylog_unit_circle((3,), q, B30)
        assert_close(expr_numeric(clausen((3,), q), B30), re3, 29)
        assert_close(expr_numeric(glaisher((3,), q), B30), im3, 29)

    def test_unbound_t_rejected(self):
        with pytest.raises(ValueError):
            expr_numeric(formal_t(), B30)

    def test_transient_rejected(self):
        with pytest.raises(ValueError):
            expr_numeric(euler_gamma(), B30)

    def test_li_point_binding(self):
        e = li_point((2,), "exp(-t)")
        val = expr_numeric(e, B30, bindings={"t": 1})
        with mp.workdps(45):
            ref = polylog_real((2,), mp.exp(mp.mpf(-1)), B30)
        assert_close(val, ref, 29)


class TestVerify:
    def test_ls52_two_pi(self):
        q = LsQuery(5, 2, Fraction(2))
        residual = verify(q, -pi_expr(5) * Fraction(13, 45), B40)
        assert residual < mp.mpf(10) ** -25

    def test_lsh_golden_value(self):
        q = LshQuery(3, 1, "2*log(rho)")
        residual = verify(q, zeta(3) / 5, B30)
        assert residual < mp.mpf(10) ** -25

    def test_lsc_query(self):
        q = LscQuery(1, 1)
        residual = verify(q, -pi_expr(), B30)
        assert residual < mp.mpf(10) ** -28

    def test_ls6_pi_third_closed_form(self):
        expr = (
            pi_expr() * zeta(5) * Fraction(15, 2)
            + pi_expr(3) * zeta(3) * Fraction(35, 36)
            + clausen((6,), Fraction(1, 3)) * Fraction(135, 2)
        )
        residual = verify(LsQuery(6, 0, Fraction(1, 3)), expr, B40)
        assert residual < mp.mpf(10) ** -25

    def test_ls52_two_pi_thirds_closed_form(self):
        q23 = Fraction(2, 3)
        expr = (
            4 * glaisher((4, 1), q23)
            - pi_expr() * glaisher((3, 1), q23) * Fraction(8, 3)
            - pi_expr(2) * glaisher((2, 1), q23) * Fraction(8, 9)
            - pi_expr(5) * Fraction(8, 1215)
        )
        residual = verify(LsQuery(5, 2, q23), expr, B40)
        assert residual < mp.mpf(10) ** -25


class TestDeterminismAndEscalation:
    def test_bit_identical_reruns(self):
        from logsine.numerics import clear_caches

        with mp.workdps(45):
            theta = mp.pi / 3
        v1 = ls_numeric(4, 1, theta, B30)
        clear_caches()
        v2 = ls_numeric(4, 1, theta, B30)
        assert v1 == v2

    def test_precision_escalation(self):
        for e in (zeta(3) * pi_expr(), li_minus_one(3, 1), clausen((2,), Fraction(1, 2))):
            lo = expr_numeric(e, B30)
            hi = expr_numeric(e, PrecisionBudget(40))
            assert_close(lo, hi, 30)

    def test_integral_evaluators_escalate(self):
        with mp.workdps(60):
            theta = 2 * mp.pi / 3
            assert_close(
                ls_numeric(5, 2, theta, B30), ls_numeric(5, 2, theta, B40), 30
            )
            assert_close(
                lsh_numeric(4, 1, mp.mpf(2), B30), lsh_numeric(4, 1, mp.mpf(2), B40), 30
            )
            assert_close(lsc_numeric(3, 2, B30), lsc_numeric(3, 2, B40), 30)
