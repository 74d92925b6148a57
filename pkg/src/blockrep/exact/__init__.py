"""Exact scalar, polynomial and linear-algebra kernel."""

from .linsolve import Inconsistent, RowReducer, SolutionSpace, rational_det, solve_linear
from .matrix import (
    PolyMatrix,
    poly_det,
    rational_roots,
    resultant,
    sylvester_matrix,
    univariate_gcd,
)
from .poly import (
    MultiPoly,
    divexact,
    parse_poly,
    poly_arith,
    poly_collect,
    poly_substitute,
    symbols,
)
from .rational import Rational, format_rational, parse_rational

poly_divexact = divexact

__all__ = [
    "Inconsistent",
    "MultiPoly",
    "PolyMatrix",
    "Rational",
    "RowReducer",
    "SolutionSpace",
    "divexact",
    "format_rational",
    "parse_poly",
    "parse_rational",
    "poly_arith",
    "poly_collect",
    "poly_det",
    "poly_divexact",
    "poly_substitute",
    "rational_det",
    "rational_roots",
    "resultant",
    "solve_linear",
    "sylvester_matrix",
    "symbols",
    "univariate_gcd",
]
