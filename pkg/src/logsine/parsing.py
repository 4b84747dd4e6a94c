"""Parsers for query strings and canonical expression text.

The expression grammar accepts exactly what the canonical renderer emits
(plus alternative angle spellings like ``Pi/3``), so rendered output
round-trips.  The query grammar accepts single integrals and linear
combinations with rational coefficients, e.g.::

    Ls(5,2,2pi)
    Ls(6,3,pi/3) - 2*Ls(6,1,pi/3)
    Lsh(3,1,2*log(rho))
    Lsc(2,2,pi)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    POINT_EXP_NEG_T,
    POINT_RHO_SQ_INV,
    SymbolicExpr,
    clausen,
    formal_t,
    glaisher,
    li_minus_one,
    li_point,
    log2_expr,
    pi_expr,
    zeta,
)
from .queries import LsQuery, LshQuery, LscQuery

__all__ = [
    "QuerySyntaxError",
    "QueryDomainError",
    "ParsedInput",
    "parse_query",
    "parse_expression",
    "parse_angle",
]


class QuerySyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class QueryDomainError(ValueError):
    pass


@dataclass(frozen=True)
class ParsedInput:
    """Either a linear combination of integral queries or a bare expression."""

    kind: str  # "combination" | "expr"
    terms: tuple = ()  # [(Fraction, query)] for combinations
    expression: SymbolicExpr | None = None


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<int>\d+)"
    r"|(?P<op>[-+*/^(),\[\]{}]))"
)


def _tokenize(s: str):
    tokens = []
    pos = 0
    while pos < len(s):
        m = _TOKEN_RE.match(s, pos)
        if not m or m.end() == m.start():
            if s[pos:].strip():
                raise QuerySyntaxError(f"unexpected character {s[pos]!r}", pos)
            break
        if m.lastgroup or m.group().strip():
            kind = m.lastgroup
            tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(s)))
    return tokens


class _Cursor:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, text, pos = self.next()
        if text != value:
            raise QuerySyntaxError(f"expected {value!r}, found {text!r}", pos)

    def at(self, value) -> bool:
        return self.peek()[1] == value

    def at_name(self, *names) -> bool:
        kind, text, _ = self.peek()
        return kind == "name" and text.lower() in names


def _parse_int(cur: _Cursor) -> int:
    kind, text, pos = cur.next()
    if kind != "int":
        raise QuerySyntaxError(f"expected integer, found {text!r}", pos)
    return int(text)


def _parse_rational(cur: _Cursor) -> Fraction:
    sign = 1
    if cur.at("-"):
        cur.next()
        sign = -1
    num = _parse_int(cur)
    den = 1
    if cur.at("/"):
        cur.next()
        den = _parse_int(cur)
    return Fraction(sign * num, den)


def parse_angle(cur: _Cursor) -> Fraction:
    """Angle as the rational q with sigma = q*pi.

    Accepts ``pi``, ``2pi``, ``2*pi``, ``pi/3``, ``1/3*pi``, ``2pi/3``,
    ``-pi/3``, and ``0``; case-insensitive.
    """
    sign = 1
    if cur.at("-"):
        cur.next()
        sign = -1
    if cur.at_name("pi"):
        cur.next()
        coeff = Fraction(1)
    else:
        kind, text, pos = cur.peek()
        if kind != "int":
            raise QuerySyntaxError(f"expected angle, found {text!r}", pos)
        coeff = _parse_rational(cur)
        if cur.at("*"):
            cur.next()
        if cur.at_name("pi"):
            cur.next()
        elif coeff == 0:
            return Fraction(0)
        else:
            kind, text, pos = cur.peek()
            raise QuerySyntaxError(f"expected 'pi', found {text!r}", pos)
    if cur.at("/"):
        cur.next()
        coeff /= _parse_int(cur)
    return sign * coeff


def _parse_lsh_t(cur: _Cursor):
    if cur.at_name("t"):
        cur.next()
        return None
    start = cur.i
    if cur.at("2"):
        # 2*log(rho) or 2log(rho)
        cur.next()
        if cur.at("*"):
            cur.next()
        if cur.at_name("log"):
            cur.next()
            cur.expect("(")
            kind, text, pos = cur.next()
            if text.lower() != "rho":
                raise QuerySyntaxError("only log(rho) is recognized here", pos)
            cur.expect(")")
            return "2*log(rho)"
        cur.i = start
    value = _parse_rational(cur)
    if value <= 0:
        raise QueryDomainError("log-sinh integrals require t > 0")
    return value


def _parse_query_atom(cur: _Cursor):
    kind, text, pos = cur.next()
    name = text.lower()
    try:
        if name == "ls":
            cur.expect("(")
            n = _parse_int(cur)
            cur.expect(",")
            k = _parse_int(cur)
            cur.expect(",")
            q = parse_angle(cur)
            cur.expect(")")
            return LsQuery(n, k, q)
        if name == "lsh":
            cur.expect("(")
            n = _parse_int(cur)
            cur.expect(",")
            k = _parse_int(cur)
            t = None
            if cur.at(","):
                cur.next()
                t = _parse_lsh_t(cur)
            cur.expect(")")
            return LshQuery(n, k, t)
        if name == "lsc":
            cur.expect("(")
            m = _parse_int(cur)
            cur.expect(",")
            n = _parse_int(cur)
            cur.expect(",")
            q = parse_angle(cur)
            cur.expect(")")
            if q != 1:
                raise QueryDomainError(
                    "log-sine-cosine evaluation is only available at pi"
                )
            return LscQuery(m, n)
    except ValueError as exc:
        if isinstance(exc, (QuerySyntaxError, QueryDomainError)):
            raise
        raise QueryDomainError(str(exc)) from exc
    raise QuerySyntaxError(f"unknown integral {text!r}", pos)


def parse_query(s: str) -> ParsedInput:
    """Parse a query string into a combination of integrals or an expression."""
    tokens = _tokenize(s)
    names = {t[1].lower() for t in tokens if t[0] == "name"}
    if not names & {"ls", "lsh", "lsc"}:
        return ParsedInput("expr", expression=parse_expression(s))
    cur = _Cursor(tokens)
    terms = []
    sign = Fraction(1)
    first = True
    while True:
        if cur.at("-"):
            cur.next()
            sign = -sign
        elif cur.at("+"):
            cur.next()
        elif not first:
            kind, text, pos = cur.peek()
            if kind == "end":
                break
            raise QuerySyntaxError(f"expected '+' or '-', found {text!r}", pos)
        first = False
        coeff = Fraction(1)
        kind, text, pos = cur.peek()
        if kind == "int":
            coeff = _parse_rational(cur)
            if cur.at("*"):
                cur.next()
        query = _parse_query_atom(cur)
        terms.append((sign * coeff, query))
        sign = Fraction(1)
        if cur.peek()[0] == "end":
            break
    return ParsedInput("combination", terms=tuple(terms))


# -- expression grammar -------------------------------------------------------


def _parse_index_list(cur: _Cursor) -> tuple[int, ...]:
    out = [_parse_int(cur)]
    while cur.at(","):
        cur.next()
        out.append(_parse_int(cur))
    return tuple(out)


def _parse_bracketed_symbol(cur: _Cursor, name: str) -> SymbolicExpr:
    lname = name.lower()
    cur.expect("[")
    if lname == "zeta":
        index = _parse_index_list(cur)
        cur.expect("]")
        return zeta(*index)
    cur.expect("{")
    index = _parse_index_list(cur)
    cur.expect("}")
    cur.expect(",")
    if lname == "li":
        if cur.at("-"):
            cur.next()
            one = _parse_int(cur)
            if one != 1:
                raise QueryDomainError("polylogarithm points are -1 or tagged reals")
            cur.expect("]")
            return li_minus_one(*index)
        kind, text, pos = cur.next()
        if text.lower() == "rho":
            cur.expect("^")
            cur.expect("-")
            if _parse_int(cur) != 2:
                raise QueryDomainError("only the point rho^-2 is tabulated")
            cur.expect("]")
            return li_point(index, POINT_RHO_SQ_INV)
        if text.lower() == "exp":
            cur.expect("(")
            cur.expect("-")
            kind2, text2, pos2 = cur.next()
            if text2.lower() != "t":
                raise QuerySyntaxError("expected exp(-t)", pos2)
            cur.expect(")")
            cur.expect("]")
            return li_point(index, POINT_EXP_NEG_T)
        raise QuerySyntaxError(f"unknown evaluation point {text!r}", pos)
    q = parse_angle(cur)
    cur.expect("]")
    if lname == "cl":
        return clausen(index, q)
    if lname == "gl":
        return glaisher(index, q)
    raise QueryDomainError(f"unknown symbol {name!r}")


def _parse_factor(cur: _Cursor) -> SymbolicExpr:
    kind, text, pos = cur.peek()
    if kind == "int":
        value = _parse_rational(cur)
        return SymbolicExpr.from_scalar(value)
    if kind != "name":
        raise QuerySyntaxError(f"expected factor, found {text!r}", pos)
    cur.next()
    lname = text.lower()
    if lname == "pi":
        base = pi_expr()
    elif lname == "log2":
        base = log2_expr()
    elif lname == "t":
        base = formal_t()
    elif lname in ("zeta", "li", "cl", "gl"):
        base = _parse_bracketed_symbol(cur, text)
    else:
        raise QuerySyntaxError(f"unknown symbol {text!r}", pos)
    if cur.at("^"):
        cur.next()
        power = _parse_int(cur)
        base = base**power
    return base


def _parse_term(cur: _Cursor) -> SymbolicExpr:
    out = _parse_factor(cur)
    while True:
        if cur.at("*"):
            cur.next()
            out = out * _parse_factor(cur)
        elif cur.at("/"):
            # rational division: only numeric denominators appear
            cur.next()
            den = _parse_int(cur)
            out = out / den
        else:
            return out


def parse_expression(s: str) -> SymbolicExpr:
    """Parse canonical expression text back into an exact expression."""
    cur = _Cursor(_tokenize(s))
    total = SymbolicExpr.zero()
    sign = 1
    if cur.at("-"):
        cur.next()
        sign = -1
    if cur.peek()[0] == "end":
        raise QuerySyntaxError("empty expression", 0)
    while True:
        term = _parse_term(cur)
        total = total + (term if sign > 0 else -term)
        kind, text, pos = cur.peek()
        if kind == "end":
            return total
        if text == "+":
            sign = 1
        elif text == "-":
            sign = -1
        else:
            raise QuerySyntaxError(f"expected '+' or '-', found {text!r}", pos)
        cur.next()
