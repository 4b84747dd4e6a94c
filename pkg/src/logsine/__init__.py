"""Symbolic closed forms and verified numerics for generalized log-sine integrals."""

from .algebra import (
    GaussianRational,
    Rational,
    SymbolicExpr,
    clausen,
    glaisher,
    li_minus_one,
    li_point,
    log2_expr,
    pi_expr,
    render_expr,
    zeta,
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
    verify,
)
from .parsing import parse_expression, parse_query
from .pi_extraction import ls_2pi, ls_pi, ls_pi_basic, lsc_pi
from .queries import LsQuery, LshQuery, LscQuery
from .reduction import apply_reductions, default_table, load_table, pslq

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "GaussianRational",
    "LsQuery",
    "LscQuery",
    "LshQuery",
    "PrecisionBudget",
    "Rational",
    "SymbolicExpr",
    "apply_reductions",
    "clausen",
    "default_table",
    "expr_numeric",
    "glaisher",
    "li_minus_one",
    "li_point",
    "load_table",
    "log2_expr",
    "ls_2mpi",
    "ls_2pi",
    "ls_general",
    "ls_numeric",
    "ls_pi",
    "ls_pi_basic",
    "lsc_numeric",
    "lsc_pi",
    "lsh",
    "lsh_at_golden",
    "lsh_numeric",
    "parse_expression",
    "parse_query",
    "pi_expr",
    "pslq",
    "reduce_query",
    "render_expr",
    "verify",
    "zeta",
]
