from fractions import Fraction
from itertools import product

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from blockrep.exact import MultiPoly
from blockrep.lie import L, bracket, check_jacobi, check_subalgebras, structure_constant
from blockrep.lincomb import Window
from blockrep.modules import (
    BLOCK_AAB,
    BLOCK_DEF_A,
    BLOCK_DEF_B,
    BLOCK_DEF_C,
    VIR_AA,
    VIR_AAB,
    VIR_BA,
    ModuleSpec,
    SymbolicBranchError,
    act,
    axiom_residual,
    basis_action,
    check_axiom_symbolic,
    check_module_axiom,
    generic_coefficient,
    v,
    vir_check_isomorphism,
    vir_simplicity,
    vir_simplicity_report,
)

a_sym, b_sym = MultiPoly.variable("a"), MultiPoly.variable("b")
idx = st.integers(-4, 4)


# ---------------------------------------------------------------- Lie algebra


def test_bracket_examples():
    assert bracket(L(1, 0), L(2, 0)) == L(3, 0)
    assert bracket(L(2, 2), L(1, 1)) == L(3, 3, -1)


@given(idx, idx, idx, idx)
def test_bracket_is_alternating(i, j, k, l):
    x = L(i, j) + L(k, l, Fraction(1, 3))
    assert not bracket(x, x)
    assert structure_constant(i, j, k, l) == -structure_constant(k, l, i, j)


def test_jacobi_trivial_and_corrupted():
    assert check_jacobi(Window.point(0, 0)).passed

    def flipped(i, j, k, l):
        c = structure_constant(i, j, k, l)
        return -c if (i, j) == (1, 0) else c

    rep = check_jacobi(Window.square(1), flipped)
    assert not rep.passed and "jacobi_sum" in rep.witness


def test_virasoro_subalgebras():
    assert check_subalgebras(Window.square(4)).passed


# ---------------------------------------------------------------- displayed tables as an oracle


def table(family: str, i: int, j: int, k: int, l: int) -> int:
    """Coefficient of v(i+k, j+l) in L(i,j) v(k,l), straight from the three displayed definitions."""
    generic = (j + 1) * k - (l + 1) * i
    bump = i if (i + k == 0 and j + l == -2) else 0
    if family == BLOCK_DEF_A:
        return 0 if (k, l) == (0, -2) else generic + bump
    if (k, l) == (0, -1):
        return i
    if (k, l) == (0, -2):
        return i if family == BLOCK_DEF_B else 0
    if (i + k, j + l) == (0, -1):
        return 0
    return generic + (bump if family == BLOCK_DEF_C else 0)


@pytest.mark.parametrize("family", [BLOCK_DEF_A, BLOCK_DEF_B, BLOCK_DEF_C])
def test_deformed_tables(family):
    spec = ModuleSpec(family)
    for i, j, k, l in product(range(-3, 4), repeat=4):
        tgt, c = basis_action(spec, i, j, k, l)
        assert tgt == (i + k, j + l)
        assert c == table(family, i, j, k, l), (i, j, k, l)


def test_action_examples():
    s = ModuleSpec(BLOCK_AAB, a_sym, b_sym)
    assert act(s, (1, 0), v(0, 0)) == v(1, 0, a_sym + b_sym - 1)
    assert generic_coefficient(s).subs({"i": 0, "j": 0}) == MultiPoly.variable("k") + a_sym
    vir = ModuleSpec(VIR_AAB, a_sym, b_sym)
    assert generic_coefficient(vir) == a_sym + MultiPoly.variable("k") + b_sym * MultiPoly.variable("i")


@given(st.fractions(-3, 3, max_denominator=4), st.fractions(-3, 3, max_denominator=4), idx, idx)
@settings(max_examples=40)
def test_weight_operator_eigenvalue(a, b, k, l):
    spec = ModuleSpec(BLOCK_AAB, a, b)
    assert act(spec, (0, 0), v(k, l)) == v(k, l, a + k)


def test_symbolic_deformed_rejected():
    with pytest.raises(SymbolicBranchError):
        ModuleSpec(BLOCK_DEF_A, a_sym, 0)
    with pytest.raises(ValueError):
        ModuleSpec(BLOCK_DEF_B, 1, 0)
    with pytest.raises(SymbolicBranchError):
        generic_coefficient(ModuleSpec(BLOCK_DEF_C))
    with pytest.raises(ValueError):
        ModuleSpec.from_cli("nope")


# ---------------------------------------------------------------- module axiom


@pytest.mark.parametrize(
    "spec",
    [
        ModuleSpec(BLOCK_AAB, Fraction(1, 2), 0),
        ModuleSpec(BLOCK_AAB, 0, 0),
        ModuleSpec(BLOCK_DEF_A),
        ModuleSpec(VIR_AAB, Fraction(2, 3), Fraction(-1, 5)),
        ModuleSpec(VIR_AA, Fraction(1, 2)),
        ModuleSpec(VIR_BA, 3),
    ],
    ids=str,
)
def test_module_axiom_small_window(spec):
    assert check_module_axiom(spec, Window.square(2)).passed


def test_module_axiom_symbolic_parameters():
    assert check_module_axiom(ModuleSpec(BLOCK_AAB, a_sym, b_sym), Window.square(1)).passed


def test_symbolic_axiom_and_sympy_oracle():
    spec = ModuleSpec(BLOCK_AAB, a_sym, b_sym)
    rep = check_axiom_symbolic(spec)
    assert rep.passed
    # independent expansion
    p, q, m, s, i, t, a, b = sp.symbols("p q m s i t a b")

    def A(gi, gj, vk, vl):
        return (gj + 1) * (a + vk) + (b - 1 - vl) * gi

    res = A(p, q, i + m, t + s) * A(m, s, i, t) - A(p, q, i, t) * A(m, s, i + p, t + q) - ((q + 1) * m - (s + 1) * p) * A(p + m, q + s, i, t)
    assert sp.expand(res) == 0
    assert check_axiom_symbolic(ModuleSpec(VIR_AAB, a_sym, b_sym)).passed


def test_corrupted_coefficient_caught():
    spec = ModuleSpec(BLOCK_AAB, a_sym, b_sym)
    good = generic_coefficient(spec)
    i, j = MultiPoly.variable("i"), MultiPoly.variable("j")
    for bad in (good - 2 * (b_sym - 1 - MultiPoly.variable("l")) * i, good + i * j):
        rep = check_axiom_symbolic(spec, bad)
        assert not rep.passed and rep.witness["residual"] != "0"


def test_shifting_b_is_not_a_corruption():
    # (b-1-l) -> (b-l) is A_{a,b+1}, still a module
    spec = ModuleSpec(BLOCK_AAB, a_sym, b_sym)
    shifted = generic_coefficient(spec) + MultiPoly.variable("i")
    assert axiom_residual(spec, shifted).is_zero()


# ---------------------------------------------------------------- Virasoro facts


@pytest.mark.parametrize("a,b,simple", [(Fraction(1, 2), 7, True), (0, 0, False), (3, Fraction(1, 2), True), (0, 1, False), (2, 5, True)])
def test_vir_simplicity(a, b, simple):
    assert vir_simplicity(a, b) is simple
    assert vir_simplicity_report(a, b).passed


def test_vir_isomorphism():
    assert vir_check_isomorphism(Fraction(1, 2)).passed
    assert vir_check_isomorphism(a_sym).passed
    with pytest.raises(ValueError):
        vir_check_isomorphism(2)
