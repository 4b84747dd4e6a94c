"""Command-line front end.

Evaluates log-sine / log-sinh / log-sine-cosine queries symbolically,
optionally reduces the result against the rule table, optionally verifies
it against direct numerical integration, and prints text or JSON.

Exit codes: 0 success, 2 parse or domain error, 3 verification residual
above threshold, 4 reduction-table integrity failure.
"""

from __future__ import annotations

import argparse
import json
import sys
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
    SymbolicExpr,
    render_expr,
)
from .argument_reduction import ls_2mpi, reduce_query
from .general_angle import ls_general, lsh, lsh_at_golden
from .numerics import (
    BudgetError,
    PrecisionBudget,
    expr_numeric,
    ls_numeric,
    lsc_numeric,
    lsh_numeric,
)
from .parsing import ParsedInput, QueryDomainError, QuerySyntaxError, parse_query
from .pi_extraction import ls_pi, lsc_pi
from .queries import LsQuery, LshQuery, LscQuery
from .reduction import (
    ReductionTable,
    TableIntegrityError,
    apply_reductions,
    default_table,
    load_table,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VERIFY = 3
EXIT_TABLE = 4


def evaluate_query(query, allow_wide: bool = False) -> SymbolicExpr:
    """Symbolic value of a single query, raw (unreduced)."""
    if isinstance(query, LsQuery):
        if allow_wide and 1 < query.q <= 2:
            return ls_general(query.n, query.k, query.q, allow_wide=True)
        comb = reduce_query(query)
        total = comb.constant
        for coeff, sub in comb.terms:
            if sub.q.denominator == 1 and sub.q % 2 == 0:
                value = ls_2mpi(sub.n, sub.k, int(sub.q) // 2)
            elif sub.q == 1:
                value = ls_pi(sub.n, sub.k)
            elif sub.q == 0:
                value = SymbolicExpr.zero()
            else:
                value = ls_general(sub.n, sub.k, sub.q)
            total = total + coeff * value
        return total
    if isinstance(query, LshQuery):
        if query.t == "2*log(rho)":
            return lsh_at_golden(query.n, query.k)
        return lsh(query.n, query.k)
    if isinstance(query, LscQuery):
        return lsc_pi(query.m, query.n)
    raise TypeError(f"unsupported query type {type(query).__name__}")


def evaluate_input(parsed: ParsedInput, allow_wide: bool = False) -> SymbolicExpr:
    if parsed.kind == "expr":
        return parsed.expression
    total = SymbolicExpr.zero()
    for coeff, query in parsed.terms:
        total = total + evaluate_query(query, allow_wide) * coeff
    return total


def _numeric_of_input(parsed: ParsedInput, budget: PrecisionBudget):
    with mp.workdps(budget.working_dps):
        total = mp.mpf(0)
        for coeff, query in parsed.terms:
            c = mp.mpf(coeff.numerator) / coeff.denominator
            if isinstance(query, LsQuery):
                sigma = mp.pi * query.q.numerator / query.q.denominator
                total += c * ls_numeric(query.n, query.k, sigma, budget)
            elif isinstance(query, LshQuery):
                total += c * lsh_numeric(query.n, query.k, _t_value(query), budget)
            else:
                total += c * lsc_numeric(query.m, query.n, budget)
        return total


def _t_value(query: LshQuery):
    if query.t == "2*log(rho)":
        return 2 * mp.log((1 + mp.sqrt(5)) / 2)
    if query.t is None:
        return mp.mpf(1)  # formal queries verify at the sample point t = 1
    if isinstance(query.t, Fraction):
        return mp.mpf(query.t.numerator) / query.t.denominator
    return mp.mpf(query.t)


def _bindings_for(parsed: ParsedInput):
    for _, query in parsed.terms:
        if isinstance(query, LshQuery):
            return {"t": _t_value(query)}
    return None


_KIND_NAMES = {
    KIND_PI: "Pi",
    KIND_LOG2: "Log2",
    KIND_LOGPI: "LogPi",
    KIND_GAMMA: "EulerGamma",
    KIND_T: "t",
    KIND_ZETA: "Zeta",
    KIND_LI_M1: "LiMinusOne",
    KIND_LI_PT: "LiRealPoint",
    KIND_CL: "Cl",
    KIND_GL: "Gl",
}


def expression_json(e: SymbolicExpr) -> list:
    from .algebra import _mono_sort_key, render_coeff

    out = []
    for mono, coeff in sorted(e.terms.items(), key=lambda kv: _mono_sort_key(kv[0])):
        factors = []
        for sym, power in mono:
            item = {"kind": _KIND_NAMES[sym.kind], "power": power}
            if sym.index:
                item["index"] = list(sym.index)
            if sym.angle is not None:
                item["angle"] = str(sym.angle)
            if sym.point is not None:
                item["point"] = sym.point
            factors.append(item)
        out.append({"coeff": render_coeff(coeff), "factors": factors})
    return out


def run(parsed: ParsedInput, options) -> dict:
    """Evaluate, reduce, and optionally verify one parsed input."""
    expr = evaluate_input(parsed, options.wide_angle)
    table = options.loaded_table
    reduced = apply_reductions(expr, options.reduce_mode, table)
    if not reduced.is_real():
        raise RuntimeError("internal error: non-real public result")
    if reduced.has_transient():
        raise RuntimeError("internal error: transient symbol in public result")
    result = {
        "query": options.query_text,
        "expression": expression_json(reduced),
        "text": render_expr(reduced),
        "weight": reduced.weight(),
        "reduced_mode": options.reduce_mode,
    }
    if options.verify_digits is not None:
        if parsed.kind == "expr":
            raise QueryDomainError("only integral queries can be verified")
        budget = PrecisionBudget(options.verify_digits)
        lhs = _numeric_of_input(parsed, budget)
        rhs = expr_numeric(reduced, budget, bindings=_bindings_for(parsed))
        with mp.workdps(budget.working_dps):
            residual = abs(lhs - rhs)
        result["verify"] = {
            "digits": options.verify_digits,
            "residual": mp.nstr(residual, 8),
            "passed": bool(
                residual < mp.mpf(10) ** (-(options.verify_digits - 5))
            ),
        }
    return result


class _Options:
    def __init__(self, args, query_text):
        self.query_text = query_text
        if args.no_reduce:
            self.reduce_mode = "off"
        elif args.heuristic:
            self.reduce_mode = "with-heuristic"
        else:
            self.reduce_mode = "analytic-only"
        self.verify_digits = args.digits if args.verify else None
        self.wide_angle = args.wide_angle
        self.loaded_table = None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logsine",
        description="Closed forms for generalized log-sine integrals, "
        "with optional numeric verification.",
    )
    parser.add_argument(
        "query",
        help="e.g. 'Ls(5,2,2pi)', 'Ls(6,3,pi/3) - 2*Ls(6,1,pi/3)', "
        "'Lsh(3,1,2*log(rho))', 'Lsc(2,2,pi)'",
    )
    parser.add_argument(
        "--heuristic",
        action="store_true",
        help="also apply the numerically derived (PSLQ) reduction rules",
    )
    parser.add_argument(
        "--no-reduce", action="store_true", help="emit the raw evaluation"
    )
    parser.add_argument(
        "--verify",
        action="store_true",
        help="check the result against direct numerical integration",
    )
    parser.add_argument(
        "--digits",
        type=int,
        default=30,
        metavar="N",
        help="verification precision (default 30)",
    )
    parser.add_argument(
        "--table", metavar="PATH", help="override the shipped reduction table"
    )
    parser.add_argument(
        "--check-table",
        action="store_true",
        help="re-verify every PSLQ table rule numerically before use",
    )
    parser.add_argument("--json", action="store_true", help="emit JSON on stdout")
    parser.add_argument(
        "--wide-angle",
        action="store_true",
        help="expert: apply the general-angle identity directly for "
        "pi < sigma <= 2*pi instead of reducing the argument",
    )
    return parser


def _protect_negative_query(argv):
    """Keep argparse from treating a leading-minus query as an option.

    A query like ``-Ls(5,0,pi/3)`` gets a leading space, which argparse
    accepts as a positional and the tokenizer ignores.
    """
    import re

    return [
        " " + arg
        if re.match(r"-\s*[\d/*. ]*(ls|lsh|lsc)\s*\(", arg, re.IGNORECASE)
        else arg
        for arg in argv
    ]


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_protect_negative_query(argv))
    options = _Options(args, args.query)
    try:
        if args.table:
            options.loaded_table = load_table(
                args.table, verify_digits=60 if args.check_table else None
            )
        elif args.check_table:
            options.loaded_table = default_table()
            options.loaded_table.verify(60)
    except (TableIntegrityError, OSError) as exc:
        print(f"table error: {exc}", file=sys.stderr)
        return EXIT_TABLE
    try:
        parsed = parse_query(args.query)
        result = run(parsed, options)
    except (QuerySyntaxError, QueryDomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetError as exc:
        print(f"numeric budget exceeded: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.json:
        print(json.dumps(result, indent=2))
    else:
        print(result["text"])
        if "verify" in result:
            status = "ok" if result["verify"]["passed"] else "FAILED"
            print(
                f"verify[{result['verify']['digits']} digits] "
                f"residual {result['verify']['residual']} {status}",
                file=sys.stderr,
            )
    if "verify" in result and not result["verify"]["passed"]:
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
