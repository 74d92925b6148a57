from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from blockrep.lincomb import Window
from blockrep.modules import BLOCK_AAB, BLOCK_DEF_A, BLOCK_DEF_B, BLOCK_DEF_C, ModuleSpec, act, v
from blockrep.structure import (
    ReachabilityGraph,
    composition_series,
    generated_closure,
    rho_eigenvalue,
    rho_separation,
    window_irreducible,
)

W2, W3 = Window.square(2), Window.square(3)
A00 = ModuleSpec(BLOCK_AAB, 0, 0)


def test_killed_vector_generates_nothing():
    assert generated_closure(A00, [(0, -1)], W3, W3) == {(0, -1)}


def test_second_special_vector_generates_everything():
    assert generated_closure(A00, [(0, -2)], W3, W3) == set(W3.points())


def test_generic_seed_fills_window():
    spec = ModuleSpec(BLOCK_AAB, Fraction(1, 2), 0)
    assert generated_closure(spec, [(2, 1)], W2, W3) == set(W3.points())


def test_seed_outside_window_rejected():
    with pytest.raises(ValueError):
        generated_closure(A00, [(9, 9)], W2, W2)


@given(st.integers(1, 3), st.sampled_from([(0, -2), (1, 1), (-2, 0)]))
@settings(max_examples=10, deadline=None)
def test_closure_monotone_in_operator_window(r, seed):
    small = generated_closure(A00, [seed], Window.square(r - 1) if r > 1 else Window.point(1, 0), W3)
    big = generated_closure(A00, [seed], Window.square(r), W3)
    assert small <= big


@pytest.mark.parametrize("spec", [A00, ModuleSpec(BLOCK_DEF_A), ModuleSpec(BLOCK_DEF_C)], ids=str)
def test_closures_are_stable_under_the_action(spec):
    graph = ReachabilityGraph.build(spec, W2, W3)
    for seed in [(0, -1), (0, -2), (1, 0)]:
        reached = graph.closure([seed]).reached
        for node in reached:
            for gen in W2.points():
                img = act(spec, gen, v(*node))
                for tgt in img.support:
                    if tgt in W3:
                        assert tgt in reached


@pytest.mark.parametrize(
    "a,b,irreducible",
    [(Fraction(1, 2), 0, True), (2, Fraction(1, 3), True), (0, 0, False), (1, 1, False)],
)
def test_window_irreducible(a, b, irreducible):
    rep = window_irreducible(ModuleSpec(BLOCK_AAB, a, b), W2, W2)
    assert rep.passed is irreducible
    if not irreducible:
        assert rep.witness["seed"] == [-a, b - 1]
    assert "not a proof" in rep.notes[0]


@pytest.mark.parametrize(
    "spec,arrows",
    [
        (A00, {("V2", "V3"), ("V3", "V1")}),
        (ModuleSpec(BLOCK_AAB, -1, 2), {("V2", "V3"), ("V3", "V1")}),
        (ModuleSpec(BLOCK_DEF_A), {("V3", "V1"), ("V3", "V2")}),
        (ModuleSpec(BLOCK_DEF_B), {("V1", "V3"), ("V2", "V3")}),
        (ModuleSpec(BLOCK_DEF_C), {("V1", "V3"), ("V3", "V2")}),
    ],
    ids=str,
)
def test_composition_series(spec, arrows):
    diagram, rep = composition_series(spec, W2, W3)
    assert rep.passed
    assert set(diagram.arrows) == arrows
    assert {tuple(a["arrow"]) for a in diagram.absent} | arrows == {
        (s, d) for s in ("V1", "V2", "V3") for d in ("V1", "V2", "V3") if s != d
    }


def test_composition_series_rejects_irreducible():
    with pytest.raises(ValueError):
        composition_series(ModuleSpec(BLOCK_AAB, Fraction(1, 2), 0), W2, W2)


def test_rho_eigenvalue_matches_sympy():
    a, b, k, i = sp.symbols("a b k i")
    lam = (a - (b - 1 - k) * i) * (a + (b - k - 2) * i)
    for av, bv, kv, iv in [(Fraction(1, 2), 0, 2, 3), (3, Fraction(-2, 7), -1, 5)]:
        want = lam.subs({a: sp.Rational(str(av)), b: sp.Rational(str(bv)), k: kv, i: iv})
        assert rho_eigenvalue(av, bv, kv, iv) == Fraction(str(want))


def test_rho_separation_examples():
    rep = rho_separation(Fraction(1, 2), 0, [0, 1, 2])
    assert rep.passed and rep.witness["i"] == 1 and rep.witness["det"] == -240
    single = rho_separation(Fraction(1, 2), 0, [0])
    assert single.passed and single.witness["det"] == 1


def test_rho_collision_is_reported():
    # levels k1 + k2 = 2b - 3 always collide, whatever i is
    rep = rho_separation(0, 2, [0, 1])
    assert not rep.passed and len(rep.witness["tried"]) == 10


def test_rho_rejects_bad_input():
    with pytest.raises(ValueError):
        rho_separation(0, 0, [1, 1])
    with pytest.raises(ValueError):
        rho_separation(0, 0, [1, 2], i=0)
