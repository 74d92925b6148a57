from fractions import Fraction
from itertools import product

import pytest
import sympy as sp

from blockrep.exact import MultiPoly, divexact, parse_poly, symbols
from blockrep.lie import structure_constant
from blockrep.lincomb import Window
from blockrep.modules import BLOCK_DEF_B, ModuleSpec, basis_action
from blockrep.proof import (
    CASES,
    DeformationCase,
    build_lemma1_relations,
    closed_form,
    eliminate_cases,
    solve_deformation_case,
    verify_case_outcomes,
    verify_closed_form,
    verify_delta_factorization,
    verify_hard_factorization,
    window_stability,
)
from blockrep.proof.closed_form import closed_form_residuals, hard_cleared
from blockrep.proof.deform import axiom_equations, compare_with_family, live_unknowns, recurrence_rows
from blockrep.proof.lemma1 import (
    explained_by_rebasing,
    relation_determinant,
    transcribed_delta_factors,
)

# ---------------------------------------------------------------- closed form


def test_closed_form_relations():
    rep = verify_closed_form()
    assert rep.passed
    assert {"add", "ss", "replace", "fin", "relation-split", "chief"} <= set(rep.witness["relations"])


def test_closed_form_sympy_oracle():
    a, b0, p, q, m, s, i, t = sp.symbols("a b0 p q m s i t")

    def cf(k, s_, i_, t_):
        return (s_ + 1) * (a + i_) + (b0 - t_) * k

    chief = cf(p, q, i + m, s + t) * cf(m, s, i, t) - cf(p, q, i, t) * cf(m, s, i + p, t + q) - ((q + 1) * m - (s + 1) * p) * cf(p + m, q + s, i, t)
    assert sp.expand(chief) == 0


def test_wrong_closed_form_is_rejected():
    def off(k, s, i, t):
        return closed_form(k, s, i, t) + k * s

    rep = verify_closed_form(off)
    assert not rep.passed and "chief" in rep.witness["nonzero_residuals"]
    names = dict(closed_form_residuals(off))
    assert not names["add"].is_zero() or not names["chief"].is_zero()


def test_hard_factorization():
    rep = verify_hard_factorization()
    assert rep.passed
    assert all(rep.witness["checks"].values())
    assert rep.witness["cleared_terms"] == 1472
    cmp_ = rep.witness["display_comparison"]
    assert cmp_["prefix_divides"]
    # the displayed i^2 coefficient carries (l+j) where (1+j) is forced
    a, b0, i, k, l = symbols("a b0 i k l")
    diff = parse_poly(cmp_["difference_from_display"])
    expected = (a + b0) * (1 - l) * (a + b0 + k - l) * i**2
    assert (diff - expected).is_zero() or (diff + expected).is_zero()


def test_hard_cleared_vanishes_on_diagonal_identity():
    num = hard_cleared()
    a, b0, c = symbols("a b0 c")
    assert num.subs({"c": a + b0}).is_zero()
    assert divexact(num, symbols("i")[0]) is not None


def test_case_outcomes():
    rep = verify_case_outcomes()
    assert rep.passed
    assert {"bak", "new1", "sub1:closed", "displace:closed"} <= set(rep.witness["relations"])


# ---------------------------------------------------------------- determinant relations


def test_relation_two_coefficient():
    rel = build_lemma1_relations()[1]
    want = parse_poly("-k*(a+p+b0*i)*(a+p+k-i*(bs-1))")
    assert (rel.coefficients[2] - want).is_zero()


def test_generic_solution_satisfies_collapsed_relation():
    rel = build_lemma1_relations()[1]
    a, b0, k = symbols("a b0 k")

    def unknown(x):
        return a + x + b0 * k

    out = rel.evaluate_on(unknown).subs({"bs": b0, "s": 0})
    assert out.is_zero()


def test_relations_degenerate_at_zero_step():
    for rel in build_lemma1_relations():
        total = sum(rel.coefficients, MultiPoly.constant(0)).subs({"i": 0})
        assert total.is_zero()


def test_delta_factorization_and_negative_control():
    assert verify_delta_factorization().passed
    bad = verify_delta_factorization(transcribed_delta_factors().perturbed(2, 1))
    assert not bad.passed and bad.witness["difference_terms"] > 0


def test_determinant_against_sympy():
    m = [[sp.sympify(str(c).replace("^", "**")) for c in r.coefficients] for r in build_lemma1_relations()]
    det = sp.Matrix(m).det(method="berkowitz")
    ours = relation_determinant(build_lemma1_relations())
    u, a, p = sp.symbols("u a p")
    ours_sp = sp.sympify(str(ours).replace("^", "**")).subs(u, a + p)
    assert sp.expand(det - ours_sp) == 0


def test_rebasing_explanation():
    assert explained_by_rebasing(Fraction(0), Fraction(0), 1)
    assert not explained_by_rebasing(Fraction(2), Fraction(-1), 2)


def test_eliminate_cases_small_screen():
    rep = eliminate_cases(smax=3)
    assert rep.witness["sanity"]["delta_vanishes_on_bs=b0-s"]
    assert not rep.witness["sanity"]["true_relation_reported_impossible"]
    # the screen finds realisable data, so the check cannot pass
    assert rep.status == "fail"
    assert "realizing_module" in rep.witness


# ---------------------------------------------------------------- deformation systems

EXPECTED_DIMS = {1: 1, 2: 2, 3: 2, 4: 1, 5: 3, 6: 3, 7: 5}


@pytest.mark.parametrize("cid", sorted(CASES))
def test_deformation_dimensions(cid):
    sol, rep = solve_deformation_case(cid, 3)
    assert sol.space.dimension == EXPECTED_DIMS[cid]
    assert rep.passed is (cid not in (2, 3))


@pytest.mark.parametrize("cid", [5, 6, 7])
def test_deformed_tables_reproduced(cid):
    assert compare_with_family(CASES[cid], Window.square(3)) == []


@pytest.mark.parametrize("cid", [1, 3])
def test_recurrences_in_row_space(cid):
    w = Window.square(3)
    sol, rep = solve_deformation_case(cid, w)
    assert "recurrences_outside" not in rep.witness
    assert rep.witness["recurrences_checked"] == len(recurrence_rows(cid, w)) == {1: 130, 3: 127}[cid]


def test_case_one_stable():
    assert window_stability(1, 3, 4).passed


def test_vacuous_unknowns_dropped():
    live = live_unknowns(CASES[1], Window.square(3))
    assert ("c", 0, 1) not in live
    assert all(u[1:] != (0, 0) for u in live)


def test_axiom_equations_nonempty():
    assert len(axiom_equations(CASES[4], Window.square(3))) > 0


def test_case_validation():
    with pytest.raises(ValueError):
        DeformationCase(99, "bad", frozenset(), {(0, -1): "z"}, {})


def test_small_window_rejected():
    with pytest.raises(ValueError):
        solve_deformation_case(1, 2)


# ---------------------------------------------------------------- brute-force oracles for the extra solutions

S1, S2 = (0, -1), (0, -2)


def case3_module(t1, t2):
    def act(i, j, k, l):
        src, tgt = (k, l), (i + k, j + l)
        if S2 in (src, tgt):
            return tgt, 0
        if (i, j) == (0, 0):
            return tgt, k
        if src == S1:
            return tgt, t1 * i - t2 * (j + 1)
        if tgt == S1:
            return tgt, 0
        return tgt, (j + 1) * k - (l + 1) * i

    return act


def b_family(t):
    spec = ModuleSpec(BLOCK_DEF_B)

    def act(i, j, k, l):
        if (k, l) == S1 and (i, j) != (0, 0):
            return (i, j - 1), i - t * (j + 1)
        return basis_action(spec, i, j, k, l)

    return act


def axiom_holds(act, r=2, rv=3) -> bool:
    gens = list(product(range(-r, r + 1), repeat=2))
    vecs = list(product(range(-rv, rv + 1), repeat=2))
    for (p, q), (m, s), (i, u) in product(gens, gens, vecs):
        t1, c1 = act(m, s, i, u)
        _, c2 = act(p, q, *t1)
        t3, c3 = act(p, q, i, u)
        _, c4 = act(m, s, *t3)
        _, c5 = act(p + m, q + s, i, u)
        if c1 * c2 - c3 * c4 - structure_constant(p, q, m, s) * c5:
            return False
    return True


@pytest.mark.parametrize("t1,t2", [(1, 0), (0, 1), (2, 3)])
def test_case3_two_parameter_family_is_a_module(t1, t2):
    assert axiom_holds(case3_module(t1, t2))


@pytest.mark.parametrize("t", [0, 1, Fraction(-5, 2)])
def test_b_deforms_in_a_line(t):
    assert axiom_holds(b_family(t))


def test_oracle_detects_a_broken_action():
    def broken(i, j, k, l):
        c = (j + 1) * k - (l + 1) * i
        return (i + k, j + l), c + (1 if (i, j, k, l) == (1, 0, 1, 0) else 0)

    assert not axiom_holds(broken)
