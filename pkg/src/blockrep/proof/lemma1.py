"""Level-parameter relations: the three-term system, its determinant, and case elimination.

Setting: on level j the generators L(i,0) act by ``(a+k+b_j i)``; the unknown
coefficients ``a^{k,s}_{x,0}`` of L(k,s) on v(x,0) are opaque. Commutator
identities turn into linear relations among those unknowns whose determinant
must vanish, which constrains ``b_0, b_s, s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from ..exact.matrix import poly_det, rational_roots, resultant, univariate_gcd
from ..exact.poly import MultiPoly, divexact, symbols
from ..modules import BLOCK_AAB, ModuleSpec, basis_action
from ..report import FAIL, INCONCLUSIVE, PASS, CheckReport, stopwatch
from . import transcribed as T
from .transcribed import LEMMA1_VARS

Relation = Dict[MultiPoly, MultiPoly]  # offset -> coefficient


class TranscriptionMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class ThreeTermRelation:
    """Coefficients of the unknowns at offsets p-i, p, p+i."""

    name: str
    coefficients: Tuple[MultiPoly, MultiPoly, MultiPoly]

    def evaluate_on(self, unknown) -> MultiPoly:
        """Plug ``unknown(offset)`` in for the three unknowns."""
        i, p = symbols("i p")
        offs = (p - i, p, p + i)
        return sum((c * unknown(o) for c, o in zip(self.coefficients, offs)), MultiPoly.constant(0))


@dataclass(frozen=True)
class DeltaFactors:
    delta0: MultiPoly
    delta1: MultiPoly
    delta2: MultiPoly

    def perturbed(self, which: int = 2, amount=1) -> "DeltaFactors":
        parts = [self.delta0, self.delta1, self.delta2]
        parts[which] = parts[which] + amount
        return DeltaFactors(*parts)

    def swapped(self) -> "DeltaFactors":
        """Primed factors: data (b0, bs, s) -> (bs, b0, -s); a + p untouched."""
        return DeltaFactors(*(swap_data(d) for d in (self.delta0, self.delta1, self.delta2)))


def _v(name: str) -> MultiPoly:
    return MultiPoly.variable(name, LEMMA1_VARS)


def swap_data(e: MultiPoly) -> MultiPoly:
    return e.subs({"b0": _v("bs"), "bs": _v("b0"), "s": -_v("s")})


def transcribed_delta_factors() -> DeltaFactors:
    return DeltaFactors(T.poly(T.DELTA0), T.poly(T.DELTA1), T.poly(T.DELTA2))


def derive_four_term() -> Relation:
    """Apply the double-commutator identity to v(p,0) and read off the v(i+j+k+p, s) coefficient.

    (k-(i+j)(s+1)) (LiLjLk - LiLkLj - LjLkLi + LkLjLi) - (j+k-(s+1)i)(k-(s+1)j)(L_{i+j}Lk - LkL_{i+j}) = 0
    with Li = L(i,0), Lj = L(j,0), Lk = L(k,s).
    """
    i, j, k, p, s, a, b0, bs = (_v(n) for n in LEMMA1_VARS)

    def level(b):
        # L(g,0) on v(x, level) has coefficient a + x + b g
        return lambda g, x: a + x + b * g

    L0, Ls = level(b0), level(bs)
    rel: Relation = {}

    def add(offset: MultiPoly, coef: MultiPoly):
        rel[offset] = rel.get(offset, MultiPoly.constant(0, LEMMA1_VARS)) + coef

    f = k - (i + j) * (s + 1)
    g = (j + k - (s + 1) * i) * (k - (s + 1) * j)
    # Li Lj Lk v_p: unknown at p, then level s
    add(p, f * Ls(j, p + k) * Ls(i, p + k + j))
    # - Li Lk Lj v_p
    add(p + j, -f * L0(j, p) * Ls(i, p + j + k))
    # - Lj Lk Li v_p
    add(p + i, -f * L0(i, p) * Ls(j, p + i + k))
    # Lk Lj Li v_p
    add(p + i + j, f * L0(i, p) * L0(j, p + i))
    # - g L_{i+j} Lk v_p
    add(p, -g * Ls(i + j, p + k))
    # + g Lk L_{i+j} v_p
    add(p + i + j, g * L0(i + j, p))
    return {o: c for o, c in rel.items() if not c.is_zero()}


def substitute_relation(rel: Relation, bindings) -> Relation:
    out: Relation = {}
    for off, c in rel.items():
        o = off.subs(bindings)
        out[o] = out.get(o, MultiPoly.constant(0, LEMMA1_VARS)) + c.subs(bindings)
    return out


SUBSTITUTIONS = (
    ("j->i, p->p-i", lambda i, j, p: {"j": i, "p": p - i}),
    ("j->-i", lambda i, j, p: {"j": -i}),
    ("i,j->-i, p->p+i", lambda i, j, p: {"i": -i, "j": -i, "p": p + i}),
)


def transcribed_three_term() -> List[ThreeTermRelation]:
    return [
        ThreeTermRelation(f"relation-{n + 1}", tuple(T.poly(c) for c in row))  # type: ignore[arg-type]
        for n, row in enumerate(T.THREE_TERM)
    ]


def build_lemma1_relations() -> List[ThreeTermRelation]:
    """Derive the three relations and check them term-by-term against the stored transcription."""
    i, j, p = _v("i"), _v("j"), _v("p")
    four = derive_four_term()
    stored_four = {T.poly(o): T.poly(c) for o, c in T.FOUR_TERM.items()}
    if four.keys() != stored_four.keys():
        raise TranscriptionMismatch(f"four-term offsets differ: {sorted(map(str, four))}")
    for off, c in four.items():
        if c != stored_four[off]:
            raise TranscriptionMismatch(f"four-term coefficient at offset {off} differs by {c - stored_four[off]}")
    cols = (p - i, p, p + i)
    out = []
    stored = transcribed_three_term()
    for (label, sub), ref in zip(SUBSTITUTIONS, stored):
        rel = substitute_relation(four, sub(i, j, p))
        extra = set(rel) - set(cols)
        if any(not rel[o].is_zero() for o in extra):
            raise TranscriptionMismatch(f"{label}: unexpected offsets {sorted(map(str, extra))}")
        coeffs = tuple(rel.get(o, MultiPoly.constant(0, LEMMA1_VARS)) for o in cols)
        for col, (mine, theirs) in enumerate(zip(coeffs, ref.coefficients)):
            if mine != theirs:
                raise TranscriptionMismatch(
                    f"{ref.name} ({label}) column {['p-i', 'p', 'p+i'][col]}: difference {mine - theirs}"
                )
        out.append(ThreeTermRelation(ref.name, coeffs))  # type: ignore[arg-type]
    return out


def _to_u(e: MultiPoly) -> MultiPoly:
    # a and p only occur as a + p; rename a + p -> u (invertible: a = u - p)
    return e.subs({"a": MultiPoly.variable("u") - MultiPoly.variable("p")}).trimmed()


def relation_determinant(relations: Optional[Sequence[ThreeTermRelation]] = None) -> MultiPoly:
    rels = relations if relations is not None else transcribed_three_term()
    m = [[_to_u(c) for c in r.coefficients] for r in rels]
    return poly_det(m)


def delta_rhs(factors: DeltaFactors) -> MultiPoly:
    k = _v("k")
    return T.poly(T.DELTA_PREFIX) * (factors.delta0 + factors.delta1 * k + factors.delta2 * k**2)


def _leading_terms(p: MultiPoly, n: int = 4) -> List[str]:
    terms = sorted(p.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)[:n]
    return [str(MultiPoly({m: c}, p.vars)) for m, c in terms]


def verify_delta_factorization(factors: Optional[DeltaFactors] = None) -> CheckReport:
    factors = factors or transcribed_delta_factors()
    with stopwatch() as t:
        relations = build_lemma1_relations()
        det = relation_determinant(relations)
        rhs = _to_u(delta_rhs(factors))
        diff = (det - rhs).trimmed()
        b0, s = MultiPoly.variable("b0"), MultiPoly.variable("s")
        vanish = {
            "bs=b0-s": det.subs({"bs": b0 - s}).is_zero(),
            "bs=b0-s-1": det.subs({"bs": b0 - s - 1}).is_zero(),
        }
        spot = factors.delta2.evaluate({v: 0 for v in factors.delta2.vars})
    ok = diff.is_zero() and all(vanish.values())
    witness = {
        "determinant_terms": len(det.terms),
        "vanishes": vanish,
        "delta2_at_origin": spot,
    }
    if not diff.is_zero():
        witness["difference_leading_terms"] = _leading_terms(diff)
        witness["difference_terms"] = len(diff.terms)
    return CheckReport(
        check="lemma1-det",
        status=PASS if ok else FAIL,
        paper_ref="det: Delta = i^6 k (s-b0+bs)(1+s-b0+bs)(Delta0 + Delta1 k + Delta2 k^2)",
        witness=witness,
        elapsed_ms=t.ms,
        notes=["a and p enter only through a+p; the identity is checked after renaming a+p to u"],
    )


# ---------------------------------------------------------------- case elimination


def coefficient_system(factors: DeltaFactors) -> List[MultiPoly]:
    """Coefficients of Delta0 + Delta1 k + Delta2 k^2 in the free symbols i, u=a+p, k."""
    total = _to_u(factors.delta0 + factors.delta1 * _v("k") + factors.delta2 * _v("k") ** 2)
    out = []
    for c in total.collect(["i", "u", "k"]).values():
        c = c.trimmed()
        if not c.is_zero():
            out.append(c.content_normalized())
    return out


CASES = {
    "i": "bs = b0-1-s and Delta'0 = Delta'1 = Delta'2 = 0",
    "ii": "Delta0 = Delta1 = Delta2 = 0 and bs = b0+1-s",
    "iii": "Delta_n = Delta'_n = 0 for n = 0, 1, 2",
}


def case_system(case: str, factors: Optional[DeltaFactors] = None) -> List[MultiPoly]:
    factors = factors or transcribed_delta_factors()
    b0, s = MultiPoly.variable("b0"), MultiPoly.variable("s")
    if case == "i":
        return [e.subs({"bs": b0 - 1 - s}).trimmed() for e in coefficient_system(factors.swapped())]
    if case == "ii":
        return [e.subs({"bs": b0 + 1 - s}).trimmed() for e in coefficient_system(factors)]
    if case == "iii":
        return coefficient_system(factors) + coefficient_system(factors.swapped())
    raise ValueError(f"unknown case {case!r}")


def _nonzero(polys) -> List[MultiPoly]:
    return [p.trimmed() for p in polys if not p.is_zero()]


def _univariate_solutions(polys: List[MultiPoly], var: str) -> Tuple[str, List[Fraction], Optional[MultiPoly]]:
    """Common roots of univariate polynomials: ("none"|"all"|"roots", rational roots, leftover factor)."""
    polys = _nonzero(polys)
    if not polys:
        return "all", [], None
    g = polys[0]
    g = univariate_gcd(g, g, var)
    for q in polys[1:]:
        g = univariate_gcd(g, q, var)
        if g.is_constant():
            break
    if g.is_constant():
        return "none", [], None
    roots = rational_roots(g, var) or []
    left = g
    for r in roots:
        while True:
            q = divexact(left, MultiPoly.variable(var, left.vars) - r)
            if q is None:
                break
            left = q
    return "roots", roots, (None if left.is_constant() else left)


def _solve_two(polys: List[MultiPoly]) -> Tuple[List[Tuple[Fraction, Fraction]], List[str]]:
    """Common zeros in (b0, bs) of polynomials with rational coefficients.

    Projects to b0 with pairwise resultants, lifts rational roots, and reports
    anything not settled (curves, irrational factors) as an open item.
    """
    polys = _nonzero(polys)
    open_items: List[str] = []
    if not polys:
        return [], ["every (b0, bs) is a solution"]
    with_bs = [p for p in polys if "bs" in p.free_vars()]
    without = [p for p in polys if "bs" not in p.free_vars()]
    proj = list(without)
    # all pairs: extra resultants remove spurious projection factors
    for n, p in enumerate(with_bs):
        for q in with_bs[n + 1:]:
            r = resultant(p, q, "bs").trimmed()
            if not r.is_zero():
                proj.append(r)
    if not proj:
        return [], ["no nonzero projection: positive-dimensional component possible"]
    kind, roots, left = _univariate_solutions(proj, "b0")
    if kind == "all":
        return [], ["projection vanishes identically"]
    if left is not None:
        open_items.append(f"irrational b0 factor in projection: {left}")
    sols = []
    for r0 in roots:
        sub = [p.subs({"b0": r0}) for p in polys]
        k2, rs, left2 = _univariate_solutions(sub, "bs")
        if k2 == "all":
            open_items.append(f"b0={r0}: every bs solves")
        for r1 in rs:
            sols.append((r0, r1))
        if left2 is not None:
            open_items.append(f"b0={r0}: irrational bs factor {left2}")
    return sols, open_items


def _flips(x: Fraction) -> List[Fraction]:
    # A_{a,0} and A_{a,1} are isomorphic (a not an integer) via x_k -> (a+k) x_k
    return [x, 1 - x] if x in (0, 1) else [x]


def explained_by_rebasing(b0: Fraction, bs: Fraction, s: int) -> bool:
    return any(y == x - s for x in _flips(b0) for y in _flips(bs))


def rebased_module_witness(a=Fraction(1, 2), b=Fraction(2), levels: Sequence[int] = (1, 2, 3), radius: int = 2) -> dict:
    """A genuine module whose level parameters violate bs = b0 - s.

    Start from A_{a,b} (a not an integer) and rescale only level 0 by
    w(k,0) = (a+k) v(k,0). The result is isomorphic to A_{a,b}, still satisfies
    the module axiom, and L(i,0) now acts on level 0 with parameter b-2 instead of b-1.
    """
    spec = ModuleSpec(BLOCK_AAB, a, b)

    def scale(k, l):
        return a + k if l == 0 else Fraction(1)

    def coef(i, j, k, l):
        tgt, c = basis_action(spec, i, j, k, l)
        return tgt, c * scale(k, l) / scale(*tgt)

    # module axiom in the rescaled basis
    pts = [(x, y) for x in range(-radius, radius + 1) for y in range(-radius, radius + 1)]
    axiom_ok = True
    for (p, q), (m, s_), (k, l) in product(pts, pts, pts):
        t1, c1 = coef(m, s_, k, l)
        _, c2 = coef(p, q, *t1)
        t3, c3 = coef(p, q, k, l)
        _, c4 = coef(m, s_, *t3)
        _, c5 = coef(p + m, q + s_, k, l)
        if c1 * c2 - c3 * c4 - ((q + 1) * m - (s_ + 1) * p) * c5:
            axiom_ok = False
            break

    def level_param(lev):
        # L(1,0) on w(0,lev) = (a + b_lev) w(1,lev)
        _, c = coef(1, 0, 0, lev)
        return c - a

    b0_new = level_param(0)
    rows = []
    factors = transcribed_delta_factors()
    for s_ in levels:
        bs_new = level_param(s_)
        vals = {"b0": b0_new, "bs": bs_new, "s": s_}
        deltas_zero = all(x.subs(vals).is_zero() for x in coefficient_system(factors))
        rows.append({"s": s_, "b0": b0_new, "bs": bs_new, "bs_minus_b0_plus_s": bs_new - b0_new + s_, "delta_system_zero": deltas_zero})
    return {
        "module": f"A_(a={a}, b={b}) with level 0 rescaled by (a+k)",
        "module_axiom_on_window": axiom_ok,
        "levels": rows,
    }


def _screen_case(case: str, system: List[MultiPoly], smax: int) -> dict:
    solutions = []
    open_items = []
    for s in range(-smax, smax + 1):
        if s == 0:
            continue
        sub = _nonzero(p.subs({"s": s}) for p in system)
        if case in ("i", "ii"):
            kind, roots, left = _univariate_solutions(sub, "b0")
            if kind == "all":
                solutions.append({"s": s, "b0": "any", "bs": "b0-1-s" if case == "i" else "b0+1-s"})
                continue
            for r in roots:
                bs = r - 1 - s if case == "i" else r + 1 - s
                solutions.append({"s": s, "b0": r, "bs": bs})
            if left is not None:
                open_items.append(f"s={s}: irrational b0 factor {left}")
        else:
            sols, items = _solve_two(sub)
            for b0, bs in sols:
                solutions.append({"s": s, "b0": b0, "bs": bs})
            open_items.extend(f"s={s}: {x}" for x in items)
    admissible = []
    for sol in solutions:
        if sol["b0"] == "any":
            sol["admissible"] = True
            sol["explained_by_rebasing"] = False
            admissible.append(sol)
            continue
        sol["admissible"] = sol["bs"] != sol["b0"] - sol["s"]
        sol["explained_by_rebasing"] = explained_by_rebasing(sol["b0"], sol["bs"], sol["s"])
        if sol["admissible"]:
            admissible.append(sol)
    return {"solutions": admissible, "filtered_true_relation": len(solutions) - len(admissible), "open": open_items}


def _symbolic_attempt(case: str, system: List[MultiPoly]) -> dict:
    """Try to eliminate with s kept symbolic; a nonzero constant resultant is a full proof."""
    polys = _nonzero(system)
    if case == "iii":
        return {"result": "skipped", "reason": "three unknowns; screened per s"}
    polys = sorted(polys, key=lambda p: (p.degree("b0"), len(p.terms)))
    pairs = [(polys[0], q) for q in polys[1:4]]
    out = []
    for p, q in pairs:
        r = resultant(p, q, "b0").trimmed()
        if r.is_constant() and not r.is_zero():
            return {"result": "proved", "resultant": str(r)}
        out.append("0" if r.is_zero() else f"degree {r.degree('s')} in s")
    return {"result": "inconclusive", "resultants": out}


def eliminate_cases(smax: int = 50, factors: Optional[DeltaFactors] = None) -> CheckReport:
    """Look for parameter values realising each of the three exceptional cases.

    Each case must be impossible for the level relation bs = b0 - s to follow.
    A bounded integer screen over s never counts as a universal proof.
    """
    factors = factors or transcribed_delta_factors()
    with stopwatch() as t:
        cases = {}
        verdicts = []
        for case, desc in CASES.items():
            system = case_system(case, factors)
            sym = _symbolic_attempt(case, system)
            if sym["result"] == "proved":
                cases[case] = {"condition": desc, "symbolic": sym, "verdict": "proved impossible"}
                verdicts.append(PASS)
                continue
            screen = _screen_case(case, system, smax)
            sols = screen["solutions"]
            if sols:
                verdict = "solutions found"
                verdicts.append(FAIL)
            elif screen["open"]:
                verdict = f"unresolved for |s| <= {smax}"
                verdicts.append(INCONCLUSIVE)
            else:
                verdict = f"impossible for |s| <= {smax}"
                verdicts.append(PASS)
            unexplained = [x for x in sols if not x["explained_by_rebasing"]]
            cases[case] = {
                "condition": desc,
                "symbolic": sym,
                "verdict": verdict,
                "solution_count": len(sols),
                "examples": sols[:12],
                "unexplained_by_rebasing": unexplained[:12],
                "open": screen["open"][:10],
                "filtered_true_relation": screen["filtered_true_relation"],
            }
        b0, s = MultiPoly.variable("b0"), MultiPoly.variable("s")
        true_rel = delta_rhs(factors).subs({"bs": b0 - s}).is_zero()
        sanity = {
            "delta_vanishes_on_bs=b0-s": true_rel,
            "true_relation_reported_impossible": False,
        }
        realizable = rebased_module_witness() if FAIL in verdicts else None
    status = FAIL if FAIL in verdicts else (INCONCLUSIVE if INCONCLUSIVE in verdicts else PASS)
    if not true_rel:
        status = FAIL
    witness = {"smax": smax, "cases": cases, "sanity": sanity}
    if realizable:
        witness["realizing_module"] = realizable
    notes = [
        "primed system: data (b0, bs, s) -> (bs, b0, -s), applied outside a+p only",
        "s = 0 is excluded (bs = b0 trivially on the same level)",
        "a bounded screen is reported as bounded, never as a proof",
    ]
    if status == FAIL:
        notes.append(
            "the exceptional cases are realised: rescaling one level by (a+k) swaps its parameter "
            "between 0 and 1 (A_{a,0} ~ A_{a,1}), so bs = b0 - s only holds up to that normalisation"
        )
    return CheckReport(
        check="eliminate-cases",
        status=status,
        paper_ref="cases (i)-(iii) for the level parameters are impossible, hence bs = b0 - s",
        witness=witness,
        elapsed_ms=t.ms,
        notes=notes,
    )
