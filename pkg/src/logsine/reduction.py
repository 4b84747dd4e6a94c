"""Rewriting of raw evaluations into minimal known bases.

Two layers of rules apply, always in the same deterministic order:

* built-in analytic rules (proved in the classical literature): single
  even zeta values to pi powers, depth-1 polylogarithms at -1 to zeta
  values, the Nielsen duality rewrite for multiple zeta symbols, depth-1
  Glaisher values at any rational angle via Bernoulli polynomials, and
  odd depth-1 Clausen values at pi/3;
* a versioned rule table shipped with the package.  Entries with
  ``analytic`` provenance are classical identities and apply together
  with the built-ins; entries with ``pslq`` provenance were derived by
  integer-relation search, re-verify numerically, and apply only when the
  heuristic mode is requested.

The table is closed under itself (no rule's right side mentions a symbol
an earlier rule can rewrite), which makes fixed-point application
confluent; loading is fail-fast on structural violations and, on demand,
on numeric re-verification of every pslq entry.
"""

from __future__ import annotations

import importlib.resources
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .algebra import (
    KIND_CL,
    KIND_GL,
    KIND_LI_M1,
    KIND_ZETA,
    ConstSymbol,
    SymbolicExpr,
    pi_expr,
    render_expr,
    render_symbol,
    zeta,
)
from .numerics import PrecisionBudget, expr_numeric

__all__ = [
    "ReductionRule",
    "ReductionTable",
    "TableIntegrityError",
    "InsufficientPrecisionError",
    "bernoulli_number",
    "bernoulli_poly",
    "gl_depth1_reduce",
    "cl_odd_pi3_reduce",
    "apply_reductions",
    "default_table",
    "pslq",
    "verify_rule",
]

MODES = ("off", "analytic-only", "with-heuristic")


class TableIntegrityError(Exception):
    """The reduction table is malformed, not closed, or fails verification."""


class InsufficientPrecisionError(Exception):
    """PSLQ was invoked without enough working precision for its bounds."""


# -- Bernoulli machinery ------------------------------------------------------


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """Exact Bernoulli number (B_1 = -1/2 convention)."""
    if n < 0:
        raise ValueError("require n >= 0")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    # sum_{k=0}^{n} binom(n+1, k) B_k = 0
    total = Fraction(0)
    for k in range(n):
        total += math.comb(n + 1, k) * bernoulli_number(k)
    return -total / math.comb(n + 1, n)


@lru_cache(maxsize=None)
def bernoulli_poly(n: int) -> tuple[Fraction, ...]:
    """Coefficients (constant first) of the n-th Bernoulli polynomial."""
    if n < 0:
        raise ValueError("require n >= 0")
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = math.comb(n, k) * bernoulli_number(k)
    return tuple(coeffs)


def _bernoulli_poly_at(n: int, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(bernoulli_poly(n)):
        acc = acc * x + c
    return acc


def gl_depth1_reduce(n: int, q: Fraction) -> SymbolicExpr:
    """Depth-1 Glaisher value at q*pi as a rational multiple of pi^n.

    Uses the Bernoulli-polynomial evaluation at x = q/2, valid on the
    angle range [0, 2*pi].
    """
    if n < 2:
        raise ValueError("depth-1 Glaisher reduction needs weight >= 2")
    q = Fraction(q)
    if not 0 <= q <= 2:
        raise ValueError("angle out of range")
    x = q / 2
    coeff = (
        Fraction(2 ** (n - 1) * (-1) ** (1 + n // 2), math.factorial(n))
        * _bernoulli_poly_at(n, x)
    )
    return pi_expr(n) * coeff


def cl_odd_pi3_reduce(weight: int) -> SymbolicExpr:
    """Odd-weight depth-1 Clausen value at pi/3 as a multiple of zeta."""
    if weight < 3 or weight % 2 == 0:
        raise ValueError("reduction applies to odd weights >= 3")
    n = (weight - 1) // 2
    coeff = (
        Fraction(1, 2)
        * Fraction(4**n - 1, 4**n)
        * Fraction(9**n - 1, 9**n)
    )
    return zeta(weight) * coeff


# -- built-in analytic rewrites ------------------------------------------------


def _zeta_even_to_pi(j: int) -> SymbolicExpr:
    half = j // 2
    coeff = (
        Fraction((-1) ** (half + 1))
        * bernoulli_number(j)
        * Fraction(2**j, 2 * math.factorial(j))
    )
    return pi_expr(j) * coeff


def _is_nielsen(index: tuple[int, ...]) -> bool:
    return all(a == 1 for a in index[1:])


def _builtin_rewrite(sym: ConstSymbol) -> SymbolicExpr | None:
    if sym.kind == KIND_ZETA:
        if len(sym.index) == 1:
            j = sym.index[0]
            if j % 2 == 0:
                return _zeta_even_to_pi(j)
            return None
        if _is_nielsen(sym.index):
            a = sym.index[0]
            b = len(sym.index) - 1
            # duality: the canonical representative maximizes the leading
            # entry (equivalently minimizes depth)
            if b + 2 > a:
                return zeta(*((b + 2,) + (1,) * (a - 2)))
        return None
    if sym.kind == KIND_LI_M1 and len(sym.index) == 1:
        j = sym.index[0]
        return zeta(j) * Fraction(-(2 ** (j - 1) - 1), 2 ** (j - 1))
    if sym.kind == KIND_GL and len(sym.index) == 1 and sym.index[0] >= 2:
        return gl_depth1_reduce(sym.index[0], sym.angle)
    if (
        sym.kind == KIND_CL
        and len(sym.index) == 1
        and sym.index[0] >= 3
        and sym.index[0] % 2 == 1
        and sym.angle == Fraction(1, 3)
    ):
        return cl_odd_pi3_reduce(sym.index[0])
    return None


# -- rule table ---------------------------------------------------------------


@dataclass(frozen=True)
class ReductionRule:
    lhs: ConstSymbol
    rhs: SymbolicExpr
    provenance: str  # "analytic" | "pslq"
    digits_verified: int
    source: str

    def __post_init__(self):
        if self.provenance not in ("analytic", "pslq"):
            raise TableIntegrityError(f"unknown provenance {self.provenance!r}")
        lhs_weight = self.lhs.weight
        rhs_weight = self.rhs.weight()
        if rhs_weight not in (lhs_weight, "any"):
            raise TableIntegrityError(
                f"rule for {render_symbol(self.lhs)} changes weight "
                f"({lhs_weight} -> {rhs_weight})"
            )


class ReductionTable:
    """Ordered rule list with a by-symbol lookup, closed under itself."""

    def __init__(self, rules: list[ReductionRule], version: int = 1):
        self.version = version
        self.rules = list(rules)
        self.by_symbol: dict[ConstSymbol, ReductionRule] = {}
        for rule in self.rules:
            if rule.lhs in self.by_symbol:
                raise TableIntegrityError(
                    f"duplicate rule for {render_symbol(rule.lhs)}"
                )
            self.by_symbol[rule.lhs] = rule
        self._check_closure()

    def _check_closure(self):
        for rule in self.rules:
            for sym in rule.rhs.symbols():
                if sym in self.by_symbol:
                    raise TableIntegrityError(
                        f"rule for {render_symbol(rule.lhs)} mentions reducible "
                        f"symbol {render_symbol(sym)}"
                    )
                if _builtin_rewrite(sym) is not None:
                    raise TableIntegrityError(
                        f"rule for {render_symbol(rule.lhs)} mentions "
                        f"{render_symbol(sym)}, reducible by a built-in rule"
                    )

    def lookup(self, sym: ConstSymbol, mode: str) -> SymbolicExpr | None:
        rule = self.by_symbol.get(sym)
        if rule is None:
            return None
        if rule.provenance == "pslq" and mode != "with-heuristic":
            return None
        return rule.rhs

    def verify(self, digits: int = 60) -> None:
        """Re-verify every pslq rule numerically; raise on any failure."""
        threshold = mp.mpf(10) ** (-(digits - 10))
        for rule in self.rules:
            if rule.provenance != "pslq":
                continue
            residual = verify_rule(rule, digits)
            if not residual < threshold:
                raise TableIntegrityError(
                    f"rule for {render_symbol(rule.lhs)} fails verification: "
                    f"residual {mp.nstr(residual, 5)} at {digits} digits"
                )


def verify_rule(rule: ReductionRule, digits: int) -> mp.mpf:
    """|numeric(lhs) - numeric(rhs)| at the stated precision."""
    budget = PrecisionBudget(digits)
    lhs_val = expr_numeric(SymbolicExpr.from_symbol(rule.lhs), budget)
    rhs_val = expr_numeric(rule.rhs, budget)
    with mp.workdps(budget.working_dps):
        return abs(lhs_val - rhs_val)


# -- table file format ---------------------------------------------------------
#
# Line records:
#   lhs-symbol := expression ; provenance=analytic|pslq ; digits=<int> ; source=<str>
# plus a "version <int>" header; '#' starts a comment.  Round-trips
# bit-exactly through save_table/load_table.


def parse_rule_line(line: str) -> ReductionRule:
    from .parsing import parse_expression

    head, _, meta = line.partition(";")
    lhs_text, sep, rhs_text = head.partition(":=")
    if not sep:
        raise TableIntegrityError(f"missing ':=' in rule line: {line!r}")
    lhs_expr = parse_expression(lhs_text.strip())
    if len(lhs_expr.terms) != 1:
        raise TableIntegrityError(f"rule left side must be a single symbol: {line!r}")
    ((mono, coeff),) = lhs_expr.terms.items()
    if len(mono) != 1 or mono[0][1] != 1 or coeff.re != 1 or coeff.im != 0:
        raise TableIntegrityError(f"rule left side must be a bare symbol: {line!r}")
    lhs = mono[0][0]
    rhs = parse_expression(rhs_text.strip())
    fields = {}
    for item in meta.split(";"):
        key, sep, value = item.strip().partition("=")
        if sep:
            fields[key.strip()] = value.strip()
    try:
        provenance = fields["provenance"]
        digits = int(fields["digits"])
        source = fields.get("source", "")
    except KeyError as exc:
        raise TableIntegrityError(f"missing metadata {exc} in rule line: {line!r}")
    return ReductionRule(lhs, rhs, provenance, digits, source)


def render_rule(rule: ReductionRule) -> str:
    return (
        f"{render_symbol(rule.lhs)} := {render_expr(rule.rhs)} ; "
        f"provenance={rule.provenance} ; digits={rule.digits_verified} ; "
        f"source={rule.source}"
    )


def load_table(path_or_text, verify_digits: int | None = None) -> ReductionTable:
    """Load a rule table; fail fast on structure, optionally re-verify pslq rules."""
    if hasattr(path_or_text, "read"):
        text = path_or_text.read()
    elif "\n" in str(path_or_text) or ":=" in str(path_or_text):
        text = str(path_or_text)
    else:
        with open(path_or_text, "r", encoding="utf-8") as fh:
            text = fh.read()
    version = None
    rules = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("version"):
            version = int(line.split()[1])
            continue
        rules.append(parse_rule_line(line))
    if version is None:
        raise TableIntegrityError("table file lacks a version header")
    table = ReductionTable(rules, version)
    if verify_digits is not None:
        table.verify(verify_digits)
    return table


def save_table(table: ReductionTable, path) -> None:
    lines = [f"version {table.version}"]
    lines += [render_rule(rule) for rule in table.rules]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


@lru_cache(maxsize=1)
def default_table() -> ReductionTable:
    resource = importlib.resources.files("logsine.data").joinpath("reductions.table")
    return load_table(resource.read_text(encoding="utf-8"))


# -- fixed-point application ---------------------------------------------------


def apply_reductions(
    e: SymbolicExpr, mode: str = "analytic-only", table: ReductionTable | None = None
) -> SymbolicExpr:
    """Rewrite to the table's normal form, deterministically.

    Built-in analytic rules and analytic-provenance table entries always
    apply; pslq-provenance entries only in ``with-heuristic`` mode.
    """
    if mode not in MODES:
        raise ValueError(f"unknown reduction mode {mode!r}")
    if mode == "off":
        return e
    if table is None:
        table = default_table()
    for _ in range(1000):
        target = None
        replacement = None
        for sym in sorted(e.symbols(), key=lambda s: s.sort_key()):
            replacement = _builtin_rewrite(sym)
            if replacement is None:
                replacement = table.lookup(sym, mode)
            if replacement is not None:
                target = sym
                break
        if target is None:
            return e
        e = e.substitute_symbol(target, replacement)
    raise RuntimeError("reduction did not reach a fixed point (cyclic rules?)")


def pslq(values, max_coeff_digits: int = 6, dps: int | None = None):
    """Integer relation a with |sum a_i v_i| below tolerance, or None.

    Requires working precision of at least 10 + len(values) *
    max_coeff_digits digits (raise otherwise).  A returned relation is
    re-checked against the inputs before being reported, so a wrong
    relation is never returned silently; deterministic for fixed inputs
    and precision.
    """
    values = list(values)
    if len(values) < 2:
        raise ValueError("need at least two values")
    work_dps = dps if dps is not None else mp.mp.dps
    required = 10 + len(values) * max_coeff_digits
    if work_dps < required:
        raise InsufficientPrecisionError(
            f"PSLQ needs >= {required} working digits for "
            f"{len(values)} values at {max_coeff_digits} coefficient digits, "
            f"got {work_dps}"
        )
    with mp.workdps(work_dps):
        vals = [mp.mpf(v) for v in values]
        tol = mp.mpf(10) ** (-(work_dps - 10))
        relation = mp.pslq(
            vals, tol=tol, maxcoeff=10**max_coeff_digits, maxsteps=20000
        )
        if relation is None:
            return None
        residual = abs(mp.fsum(a * v for a, v in zip(relation, vals)))
        scale = max(abs(v) for v in vals)
        if not residual < tol * max(1, scale) * 100:
            raise InsufficientPrecisionError(
                "PSLQ returned a relation that fails the residual re-check; "
                "increase the working precision"
            )
        return list(relation)
