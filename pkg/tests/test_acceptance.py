"""Acceptance suite: one exact check per line.

Run directly (``python3 tests/test_acceptance.py``) for a pass/fail table, or
under pytest where every line is its own test.
"""

from __future__ import annotations

import sys
import time

from blockrep.exact.poly import MultiPoly
from blockrep.lie import check_jacobi
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
    check_axiom_symbolic,
    check_module_axiom,
    generic_coefficient,
)
from blockrep.proof import (
    eliminate_cases,
    solve_deformation_case,
    verify_closed_form,
    verify_delta_factorization,
    verify_hard_factorization,
    window_stability,
)
from blockrep.proof.lemma1 import transcribed_delta_factors
from blockrep.structure import composition_series, rho_separation, window_irreducible

W3 = Window.square(3)


def _symbolic_aab() -> ModuleSpec:
    return ModuleSpec(BLOCK_AAB, MultiPoly.variable("a"), MultiPoly.variable("b"))


def jacobi_exhaustive():
    t0 = time.perf_counter()
    rep = check_jacobi(W3)
    ok = rep.passed and rep.witness["triples"] == 117649 and time.perf_counter() - t0 < 30
    return ok, f"{rep.witness.get('triples')} triples, {rep.elapsed_ms} ms"


def module_axiom_all_families():
    specs = [
        ModuleSpec(BLOCK_AAB, 0, 0),
        ModuleSpec(BLOCK_AAB, "1/2", "1/3"),
        ModuleSpec(BLOCK_DEF_A),
        ModuleSpec(BLOCK_DEF_B),
        ModuleSpec(BLOCK_DEF_C),
        ModuleSpec(VIR_AAB, "1/2", "1/3"),
        ModuleSpec(VIR_AA, "1/2"),
        ModuleSpec(VIR_BA, "1/2"),
    ]
    t0 = time.perf_counter()
    reps = [check_module_axiom(s, W3) for s in specs]
    elapsed = time.perf_counter() - t0
    bad = [str(s) for s, r in zip(specs, reps) if not r.passed]
    return not bad and elapsed < 120, f"{len(specs)} modules, {elapsed:.1f} s" + (f", failing {bad}" if bad else "")


def symbolic_axiom_closed_form():
    rep = check_axiom_symbolic(_symbolic_aab())
    return rep.passed and rep.elapsed_ms < 5000, f"{rep.elapsed_ms} ms"


def delta_factorization():
    rep = verify_delta_factorization()
    vanish = rep.witness["vanishes"]
    return rep.passed and all(vanish.values()), f"{rep.witness['determinant_terms']} terms, vanishing {vanish}"


def cases_eliminated():
    rep = eliminate_cases(smax=50)
    cases = rep.witness["cases"]
    verdicts = {k: v["verdict"] for k, v in cases.items()}
    impossible = all(v.startswith("proved impossible") or v.startswith("impossible") for v in verdicts.values())
    sanity = rep.witness["sanity"]
    true_ok = sanity["delta_vanishes_on_bs=b0-s"] and not sanity["true_relation_reported_impossible"]
    return impossible and true_ok, f"verdicts {verdicts}"


def closed_form_residuals():
    rep = verify_closed_form()
    return rep.passed, ", ".join(rep.witness.get("relations", [])) or str(rep.witness)


def hard_factorization():
    rep = verify_hard_factorization()
    checks = rep.witness["checks"]
    need = ["vanishes at c=a+b0", "divisible by (a+b0-c)", "divisible by (j-i)", "divisible by (k-l)"]
    return rep.passed and all(checks[n] for n in need), f"{rep.witness['cleared_terms']} cleared terms"


def deformation_cases():
    detail = []
    ok = True
    for cid in range(1, 8):
        sol, rep = solve_deformation_case(cid, 3)
        good = rep.passed
        if cid <= 4:
            good = good and sol.space.dimension == 1 and window_stability(cid, 3, 4).passed
        ok = ok and good
        detail.append(f"{cid}:{'ok' if good else 'dim ' + str(sol.space.dimension)}")
    return ok, " ".join(detail)


def composition_series_diagrams():
    want = {
        ModuleSpec(BLOCK_AAB, 0, 0): {("V2", "V3"), ("V3", "V1")},
        ModuleSpec(BLOCK_DEF_A): {("V3", "V1"), ("V3", "V2")},
        ModuleSpec(BLOCK_DEF_B): {("V1", "V3"), ("V2", "V3")},
        ModuleSpec(BLOCK_DEF_C): {("V1", "V3"), ("V3", "V2")},
    }
    ok = True
    for spec, arrows in want.items():
        diagram, rep = composition_series(spec, W3, W3)
        n_absent = len(diagram.absent)
        ok = ok and rep.passed and set(diagram.arrows) == arrows and len(diagram.witnesses) == len(arrows)
        ok = ok and n_absent == 6 - len(arrows) and all(x["applications_checked"] > 0 for x in diagram.absent)
    return ok, "four diagrams"


def irreducibility():
    r2 = Window.square(2)
    good = [window_irreducible(ModuleSpec(BLOCK_AAB, a, b), r2, r2) for a, b in (("1/2", 0), (2, "1/3"))]
    bad = window_irreducible(ModuleSpec(BLOCK_AAB, 0, 0), r2, r2)
    ok = all(r.passed for r in good) and not bad.passed and bad.witness["seed"] == [0, -1]
    return ok, f"(0,0) seed {bad.witness.get('seed')}"


def rho_levels():
    rep = rho_separation("1/2", 0, [0, 1, 2])
    return rep.passed and 1 <= rep.witness["i"] <= 10, f"i={rep.witness.get('i')}, det={rep.witness.get('det')}"


def negative_controls():
    spec = _symbolic_aab()
    i, j, k, l, a, b = (MultiPoly.variable(n) for n in "ijklab")
    # sign of the b-term flipped
    wrong = ((j + 1) * (a + k) - (b - 1 - l) * i).with_vars(generic_coefficient(spec).vars)
    sign_caught = not check_axiom_symbolic(spec, wrong).passed
    delta_caught = not verify_delta_factorization(transcribed_delta_factors().perturbed(2, 1)).passed
    return sign_caught and delta_caught, f"sign error caught={sign_caught}, delta perturbation caught={delta_caught}"


CRITERIA = [
    ("jacobi-identity", jacobi_exhaustive),
    ("module-axiom", module_axiom_all_families),
    ("symbolic-axiom", symbolic_axiom_closed_form),
    ("delta-factorization", delta_factorization),
    ("case-elimination", cases_eliminated),
    ("closed-form", closed_form_residuals),
    ("hard-factorization", hard_factorization),
    ("deformation-cases", deformation_cases),
    ("composition-series", composition_series_diagrams),
    ("irreducibility", irreducibility),
    ("rho-separation", rho_levels),
    ("negative-controls", negative_controls),
]


def _line(name: str, ok: bool, detail: str) -> str:
    return f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"


def _make_test(name, fn):
    def test():
        ok, detail = fn()
        print(_line(name, ok, detail))
        assert ok, detail

    test.__name__ = "test_" + name.replace("-", "_")
    return test


for _name, _fn in CRITERIA:
    globals()["test_" + _name.replace("-", "_")] = _make_test(_name, _fn)


def main() -> int:
    failed = 0
    for name, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(_line(name, ok, detail), flush=True)
    print(f"{len(CRITERIA) - failed}/{len(CRITERIA)} passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
