from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from blockrep.exact import (
    Inconsistent,
    MultiPoly,
    PolyMatrix,
    RowReducer,
    divexact,
    format_rational,
    parse_poly,
    parse_rational,
    poly_det,
    rational_det,
    rational_roots,
    resultant,
    solve_linear,
    sylvester_matrix,
    univariate_gcd,
)

VARS = ("x", "y", "z")
X, Y, Z = sp.symbols("x y z")

monomials = st.tuples(*(st.integers(0, 3) for _ in VARS))
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(monomials, coeffs, max_size=5)


def mk(terms) -> MultiPoly:
    return MultiPoly(terms, VARS)


def to_sympy(terms) -> sp.Expr:
    return sp.expand(sum((sp.Rational(c.numerator, c.denominator) * X**m[0] * Y**m[1] * Z**m[2]
                          for m, c in terms.items()), sp.Integer(0)))


def same(p: MultiPoly, e: sp.Expr) -> bool:
    return sp.expand(sp.sympify(str(p).replace("^", "**")) - e) == 0


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_ring_operations_match_sympy(f, g):
    p, q = mk(f), mk(g)
    a, b = to_sympy(f), to_sympy(g)
    assert same(p + q, a + b)
    assert same(p - q, a - b)
    assert same(p * q, a * b)
    assert same(p**2, a**2)


@given(polys)
@settings(max_examples=60, deadline=None)
def test_print_parse_roundtrip(f):
    p = mk(f)
    assert parse_poly(str(p)) == p


@given(polys, polys.filter(lambda t: any(t.values())))
@settings(max_examples=40, deadline=None)
def test_exact_division_recovers_factor(f, g):
    p, q = mk(f), mk(g)
    assert divexact(p * q, q) == p


@given(polys, st.integers(-3, 3), st.fractions(-2, 2, max_denominator=3))
@settings(max_examples=40, deadline=None)
def test_substitution_matches_sympy(f, yv, zv):
    p = mk(f)
    got = p.subs({"x": MultiPoly.variable("y") + 1, "z": zv})
    want = to_sympy(f).subs({X: Y + 1, Z: sp.Rational(zv.numerator, zv.denominator)})
    assert same(got, sp.expand(want))
    assert p.evaluate({"x": 2, "y": yv, "z": zv}) == Fraction(str(to_sympy(f).subs({X: 2, Y: yv, Z: sp.Rational(str(zv))})))


def test_divexact_reports_non_divisibility():
    assert divexact(parse_poly("x^2+1"), parse_poly("x-1")) is None


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_poly("x +* y")


def test_rationals():
    assert parse_rational("6/4") == Fraction(3, 2)
    assert parse_rational(" -7 ") == -7
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    for bad in ("1/0", "x", "1.5", ""):
        with pytest.raises((ValueError, ZeroDivisionError)):
            parse_rational(bad)


entries = st.dictionaries(st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(0, 0)),
                          st.integers(-3, 3).map(Fraction), max_size=3)


@given(st.lists(entries, min_size=9, max_size=9))
@settings(max_examples=25, deadline=None)
def test_poly_det_matches_sympy(cells):
    rows = [[mk(cells[3 * r + c]) for c in range(3)] for r in range(3)]
    want = sp.Matrix(3, 3, [to_sympy(c) for c in cells]).det(method="berkowitz")
    assert same(poly_det(rows), sp.expand(want))


def test_bareiss_and_cofactor_agree_on_larger_matrix():
    x, y = MultiPoly.variable("x"), MultiPoly.variable("y")
    rows = [[x + i * y + j for j in range(5)] for i in range(5)]
    rows[2][3] = x * y
    rows[4][0] = y**2 - 1
    sx, sy = sp.symbols("x y")
    m = sp.Matrix(5, 5, lambda i, j: sx + i * sy + j)
    m[2, 3] = sx * sy
    m[4, 0] = sy**2 - 1
    assert same(poly_det(PolyMatrix(rows)), sp.expand(m.det()))


def test_resultant_matches_sympy():
    p = parse_poly("x^3 - y*x + 2")
    q = parse_poly("2*x^2 + y^2*x - 1")
    sx, sy = sp.symbols("x y")
    want = sp.resultant(sx**3 - sy * sx + 2, 2 * sx**2 + sy**2 * sx - 1, sx)
    assert same(resultant(p, q, "x"), sp.expand(want))
    assert sylvester_matrix(p, q, "x").shape == (5, 5)


def test_resultant_vanishes_on_common_root():
    p = parse_poly("(x-y)*(x+1)")
    q = parse_poly("(x-y)*(x-3)")
    assert resultant(p, q, "x").is_zero()


def test_gcd_and_rational_roots():
    g = univariate_gcd(parse_poly("x^3-x"), parse_poly("x^2+2*x+1"), "x")
    assert g.content_normalized() == parse_poly("x+1")
    assert sorted(rational_roots(parse_poly("6*x^3-5*x^2-2*x+1"), "x")) == [Fraction(-1, 2), Fraction(1, 3), 1]


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=4, max_size=4))
@settings(max_examples=40, deadline=None)
def test_rational_det_matches_sympy(m):
    assert rational_det(m) == sp.Matrix(m).det()


@given(st.lists(st.lists(st.integers(-3, 3), min_size=5, max_size=5), min_size=3, max_size=6),
       st.lists(st.integers(-3, 3), min_size=5, max_size=5))
@settings(max_examples=40, deadline=None)
def test_solution_space_is_exact(a, x0):
    b = [sum(r * x for r, x in zip(row, x0)) for row in a]
    sol = solve_linear(a, b)
    assert not isinstance(sol, Inconsistent)
    assert sol.dimension == 5 - sp.Matrix(a).rank()
    for coeffs in ([0] * sol.dimension, list(range(1, sol.dimension + 1))):
        pt = sol.point(coeffs)
        assert [sum(r * x for r, x in zip(row, pt)) for row in a] == b


def test_inconsistent_system_is_flagged():
    sol = solve_linear([[1, 1], [2, 2]], [1, 3])
    assert isinstance(sol, Inconsistent) and not sol


def test_row_reducer_membership():
    red = RowReducer(3)
    red.add({0: 1, 1: 1})
    red.add({1: 1, 2: -1})
    assert red.rank == 2
    assert red.in_row_space({0: 1, 2: 1})
    assert not red.in_row_space({0: 1})
