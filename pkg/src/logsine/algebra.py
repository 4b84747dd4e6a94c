"""Exact weight-graded coefficient ring for log-sine evaluations.

Values produced by this package are finite linear combinations, with
Gaussian-rational coefficients, of monomials in atomic transcendental
constants (pi, log 2, zeta values, nested polylogarithms at -1, Clausen
and Glaisher values at rational multiples of pi, polylogarithms at tagged
real points, and a formal parameter t).  Every constant carries a weight;
all arithmetic here is exact and all values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction

__all__ = [
    "Rational",
    "GaussianRational",
    "ConstSymbol",
    "SymbolicExpr",
    "MIXED",
    "ANY",
    "IMAG_UNIT",
    "pi_expr",
    "log2_expr",
    "zeta",
    "li_minus_one",
    "clausen",
    "glaisher",
    "li_point",
    "formal_t",
    "euler_gamma",
    "log_pi",
    "rational_expr",
    "render_expr",
    "render_symbol",
    "render_angle",
]

ScalarLike = Union[int, Fraction, "GaussianRational"]


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def coerce(x: ScalarLike) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    def __add__(self, other: ScalarLike):
        if not isinstance(other, (int, Fraction, GaussianRational)):
            return NotImplemented
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: ScalarLike):
        if not isinstance(other, (int, Fraction, GaussianRational)):
            return NotImplemented
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other: ScalarLike):
        if not isinstance(other, (int, Fraction, GaussianRational)):
            return NotImplemented
        return (-self) + other

    def __mul__(self, other: ScalarLike):
        if not isinstance(other, (int, Fraction, GaussianRational)):
            return NotImplemented
        o = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / den,
            (self.im * o.re - self.re * o.im) / den,
        )

    def __pow__(self, n: int) -> "GaussianRational":
        if n < 0:
            return GaussianRational(Fraction(1)) / (self ** (-n))
        out = GaussianRational(Fraction(1))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)


IMAG_UNIT = GaussianRational(Fraction(0), Fraction(1))

# Symbol kinds, ranked by the canonical ordering used for monomials,
# rendering, and rewriting priority.
KIND_PI = 0
KIND_LOG2 = 1
KIND_LOGPI = 2
KIND_GAMMA = 3
KIND_T = 4
KIND_ZETA = 5
KIND_LI_M1 = 6
KIND_LI_PT = 7
KIND_CL = 8
KIND_GL = 9

_TRANSIENT_KINDS = frozenset({KIND_LOGPI, KIND_GAMMA})
_WEIGHT1_KINDS = frozenset({KIND_PI, KIND_LOG2, KIND_LOGPI, KIND_GAMMA, KIND_T})
_INDEXED_KINDS = frozenset({KIND_ZETA, KIND_LI_M1, KIND_LI_PT, KIND_CL, KIND_GL})

# Tag for the formal evaluation point exp(-t) of log-sinh outputs, and for
# the squared reciprocal golden mean used by the worked reductions.
POINT_EXP_NEG_T = "exp(-t)"
POINT_RHO_SQ_INV = "rho^-2"


@dataclass(frozen=True)
class ConstSymbol:
    """One atomic constant: kind plus payload (index / angle / point tag).

    Angles are stored as the rational q with theta = q*pi; the symbolic
    pipeline only ever constructs Cl/Gl symbols with 0 <= q <= 2.
    """

    kind: int
    index: tuple[int, ...] = ()
    angle: Fraction | None = None
    point: str | None = None

    def __post_init__(self) -> None:
        if self.kind in _INDEXED_KINDS:
            if not self.index or any(a < 1 for a in self.index):
                raise ValueError(f"invalid polylogarithm index {self.index}")
            if self.kind == KIND_ZETA and self.index[0] < 2:
                raise ValueError(f"divergent zeta index {self.index}")
        if self.kind in (KIND_CL, KIND_GL):
            if self.angle is None or not 0 <= self.angle <= 2:
                raise ValueError(f"Cl/Gl angle q={self.angle} outside [0, 2]")
        if self.kind == KIND_LI_PT and self.point is None:
            raise ValueError("LiRealPoint symbol requires a point tag")

    @property
    def weight(self) -> int:
        if self.kind in _WEIGHT1_KINDS:
            return 1
        return sum(self.index)

    @property
    def is_transient(self) -> bool:
        return self.kind in _TRANSIENT_KINDS

    def sort_key(self):
        angle_key = (
            (self.angle.numerator, self.angle.denominator)
            if self.angle is not None
            else ()
        )
        return (self.kind, self.index, angle_key, self.point or "")

    def __lt__(self, other: "ConstSymbol") -> bool:
        return self.sort_key() < other.sort_key()


# A monomial is a tuple of (symbol, positive exponent) pairs sorted by the
# canonical symbol ordering; the empty tuple is the unit monomial.
Monomial = tuple[tuple[ConstSymbol, int], ...]

MIXED = "mixed"
ANY = "any"


def _monomial_weight(m: Monomial) -> int:
    return sum(e * s.weight for s, e in m)


def _monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    acc: dict[ConstSymbol, int] = {}
    for s, e in a:
        acc[s] = acc.get(s, 0) + e
    for s, e in b:
        acc[s] = acc.get(s, 0) + e
    return tuple(sorted(acc.items(), key=lambda p: p[0].sort_key()))


class SymbolicExpr:
    """Normalized linear combination of monomials over GaussianRational.

    Two expressions are equal iff their normalized term maps are equal;
    zero coefficients are never stored.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict[Monomial, GaussianRational] | None = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if not coeff.is_zero():
                    clean[mono] = coeff
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero() -> "SymbolicExpr":
        return SymbolicExpr()

    @staticmethod
    def one() -> "SymbolicExpr":
        return SymbolicExpr({(): GaussianRational(Fraction(1))})

    @staticmethod
    def from_scalar(c: ScalarLike) -> "SymbolicExpr":
        return SymbolicExpr({(): GaussianRational.coerce(c)})

    @staticmethod
    def from_symbol(sym: ConstSymbol, power: int = 1) -> "SymbolicExpr":
        if power < 1:
            raise ValueError("symbol power must be positive")
        return SymbolicExpr({((sym, power),): GaussianRational(Fraction(1))})

    # -- ring operations -------------------------------------------------

    def _coerce(self, other) -> "SymbolicExpr":
        if isinstance(other, SymbolicExpr):
            return other
        return SymbolicExpr.from_scalar(other)

    def __add__(self, other) -> "SymbolicExpr":
        o = self._coerce(other)
        out = dict(self.terms)
        for mono, coeff in o.terms.items():
            acc = out.get(mono)
            out[mono] = coeff if acc is None else acc + coeff
        return SymbolicExpr(out)

    __radd__ = __add__

    def __neg__(self) -> "SymbolicExpr":
        return SymbolicExpr({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "SymbolicExpr":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "SymbolicExpr":
        return (-self) + other

    def __mul__(self, other) -> "SymbolicExpr":
        o = self._coerce(other)
        out: dict[Monomial, GaussianRational] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                mono = _monomial_mul(m1, m2)
                c = c1 * c2
                acc = out.get(mono)
                out[mono] = c if acc is None else acc + c
        return SymbolicExpr(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar: ScalarLike) -> "SymbolicExpr":
        c = GaussianRational.coerce(scalar)
        return SymbolicExpr({m: v / c for m, v in self.terms.items()})

    def __pow__(self, n: int) -> "SymbolicExpr":
        if n < 0:
            raise ValueError("negative powers of expressions are not defined")
        out = SymbolicExpr.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolicExpr):
            if isinstance(other, (int, Fraction, GaussianRational)):
                return self == SymbolicExpr.from_scalar(other)
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash(frozenset(self.terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"SymbolicExpr({render_expr(self, debug=True)})"

    # -- structure queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.terms.values())

    def symbols(self) -> set[ConstSymbol]:
        out = set()
        for mono in self.terms:
            for s, _ in mono:
                out.add(s)
        return out

    def has_transient(self) -> bool:
        return any(s.is_transient for s in self.symbols())

    def constant_term(self) -> GaussianRational:
        return self.terms.get((), GaussianRational())

    def coefficient(self, mono: Monomial) -> GaussianRational:
        return self.terms.get(mono, GaussianRational())

    def weight(self):
        """Common weight if homogeneous, ANY for zero, MIXED otherwise."""
        if not self.terms:
            return ANY
        weights = {_monomial_weight(m) for m in self.terms}
        if len(weights) == 1:
            return weights.pop()
        return MIXED

    # -- component extraction ----------------------------------------------

    def real_component(self) -> "SymbolicExpr":
        """Keep the real part of every coefficient.

        Used to discard contributions known a priori to be imaginary when
        the value being extracted is real.
        """
        return SymbolicExpr(
            {m: GaussianRational(c.re) for m, c in self.terms.items()}
        )

    def imag_component(self) -> "SymbolicExpr":
        """The expression of imaginary parts (as a real-coefficient expression)."""
        return SymbolicExpr(
            {m: GaussianRational(c.im) for m, c in self.terms.items()}
        )

    # -- rewriting ----------------------------------------------------------

    def substitute_symbol(self, sym: ConstSymbol, value: "SymbolicExpr") -> "SymbolicExpr":
        """Replace every occurrence of ``sym`` by ``value``, expanding powers."""
        out = SymbolicExpr.zero()
        for mono, coeff in self.terms.items():
            power = 0
            rest = []
            for s, e in mono:
                if s == sym:
                    power = e
                else:
                    rest.append((s, e))
            term = SymbolicExpr({tuple(rest): coeff})
            if power:
                term = term * (value**power)
            out = out + term
        return out

    def map_symbols(self, fn) -> "SymbolicExpr":
        """Rebuild the expression with ``fn(symbol) -> SymbolicExpr`` applied."""
        out = SymbolicExpr.zero()
        for mono, coeff in self.terms.items():
            term = SymbolicExpr.from_scalar(coeff)
            for s, e in mono:
                term = term * (fn(s) ** e)
            out = out + term
        return out


# -- symbol / expression constructors ---------------------------------------


def pi_symbol() -> ConstSymbol:
    return ConstSymbol(KIND_PI)


def pi_expr(power: int = 1) -> SymbolicExpr:
    if power == 0:
        return SymbolicExpr.one()
    return SymbolicExpr.from_symbol(pi_symbol(), power)


def log2_expr() -> SymbolicExpr:
    return SymbolicExpr.from_symbol(ConstSymbol(KIND_LOG2))


def euler_gamma() -> SymbolicExpr:
    return SymbolicExpr.from_symbol(ConstSymbol(KIND_GAMMA))


def log_pi() -> SymbolicExpr:
    return SymbolicExpr.from_symbol(ConstSymbol(KIND_LOGPI))


def formal_t() -> SymbolicExpr:
    return SymbolicExpr.from_symbol(ConstSymbol(KIND_T))


def zeta(*index: int) -> SymbolicExpr:
    """Multiple zeta symbol; requires a leading index of at least 2."""
    return SymbolicExpr.from_symbol(ConstSymbol(KIND_ZETA, tuple(index)))


def li_minus_one(*index: int) -> SymbolicExpr:
    """Polylogarithm at -1.  Li_1(-1) folds to -log 2 at construction."""
    idx = tuple(index)
    if idx == (1,):
        return -log2_expr()
    return SymbolicExpr.from_symbol(ConstSymbol(KIND_LI_M1, idx))


def li_at_one(*index: int) -> SymbolicExpr:
    """Polylogarithm at +1, i.e. a multiple zeta value."""
    return zeta(*index)


def clausen(index: Iterable[int], q: Fraction | int) -> SymbolicExpr:
    return SymbolicExpr.from_symbol(
        ConstSymbol(KIND_CL, tuple(index), angle=Fraction(q))
    )


def glaisher(index: Iterable[int], q: Fraction | int) -> SymbolicExpr:
    return SymbolicExpr.from_symbol(
        ConstSymbol(KIND_GL, tuple(index), angle=Fraction(q))
    )


def li_point(index: Iterable[int], point: str) -> SymbolicExpr:
    return SymbolicExpr.from_symbol(
        ConstSymbol(KIND_LI_PT, tuple(index), point=point)
    )


def rational_expr(num: int, den: int = 1) -> SymbolicExpr:
    return SymbolicExpr.from_scalar(Fraction(num, den))


# -- canonical text rendering -------------------------------------------------


def _render_fraction(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def render_coeff(c: GaussianRational, debug: bool = False) -> str:
    if c.im == 0:
        return _render_fraction(c.re)
    if not debug:
        raise ValueError(
            "complex coefficient in a user-facing expression: "
            f"({_render_fraction(c.re)}+{_render_fraction(c.im)}*I)"
        )
    return f"({_render_fraction(c.re)} + {_render_fraction(c.im)}*I)"


def render_angle(q: Fraction) -> str:
    if q == 1:
        return "Pi"
    if q.denominator == 1:
        return f"{q.numerator}*Pi"
    return f"{_render_fraction(q)}*Pi"


def render_symbol(sym: ConstSymbol) -> str:
    if sym.kind == KIND_PI:
        return "Pi"
    if sym.kind == KIND_LOG2:
        return "Log2"
    if sym.kind == KIND_LOGPI:
        return "LogPi"
    if sym.kind == KIND_GAMMA:
        return "EulerGamma"
    if sym.kind == KIND_T:
        return "t"
    idx = ",".join(str(a) for a in sym.index)
    if sym.kind == KIND_ZETA:
        return f"Zeta[{idx}]"
    if sym.kind == KIND_LI_M1:
        return f"Li[{{{idx}}},-1]"
    if sym.kind == KIND_LI_PT:
        return f"Li[{{{idx}}},{sym.point}]"
    name = "Cl" if sym.kind == KIND_CL else "Gl"
    return f"{name}[{{{idx}}},{render_angle(sym.angle)}]"


def _render_monomial(mono: Monomial) -> str:
    parts = []
    for sym, exp in mono:
        base = render_symbol(sym)
        parts.append(base if exp == 1 else f"{base}^{exp}")
    return "*".join(parts)


def render_expr(e: SymbolicExpr, debug: bool = False) -> str:
    """Canonical text form, e.g. ``-13/45*Pi^5`` or ``1/3*Zeta[3]``.

    Terms are emitted in the canonical monomial order, so equal expressions
    render identically.  Complex coefficients are only rendered in debug mode.
    """
    if not e.terms:
        return "0"
    items = sorted(e.terms.items(), key=lambda kv: _mono_sort_key(kv[0]))
    out = []
    for i, (mono, coeff) in enumerate(items):
        cstr = render_coeff(coeff, debug=debug)
        negative = cstr.startswith("-") and not cstr.startswith("(")
        mag = cstr[1:] if negative else cstr
        if mono == ():
            body = mag
        elif mag == "1":
            body = _render_monomial(mono)
        else:
            body = f"{mag}*{_render_monomial(mono)}"
        if i == 0:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)


def _mono_sort_key(mono: Monomial):
    return tuple((s.sort_key(), e) for s, e in mono)
