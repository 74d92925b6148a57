"""Command-line front end: run checks, print records, gate on exit codes.

Exit codes: 0 when every emitted record passes, 1 when any fails or is
inconclusive, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .exact.rational import is_integer, parse_rational
from .lie import check_jacobi, check_subalgebras
from .lincomb import Window
from .modules import (
    CLI_NAMES,
    ModuleSpec,
    check_axiom_symbolic,
    check_module_axiom,
    parse_param,
    vir_check_isomorphism,
    vir_simplicity_report,
)
from .proof import (
    CASES,
    eliminate_cases,
    solve_deformation_case,
    verify_case_outcomes,
    verify_closed_form,
    verify_delta_factorization,
    verify_hard_factorization,
    window_stability,
)
from .report import FAIL, PASS, CheckReport, jsonable, stopwatch, worst_status
from .structure import composition_series, rho_separation, window_irreducible

PROFILES = {
    "quick": {"radius": 2, "radius_big": 3, "smax": 10},
    "full": {"radius": 4, "radius_big": 4, "smax": 50},
}

AXIOM_DEFAULTS = [("aab", "1/2", "1/3"), ("def-a", "0", "0"), ("def-b", "0", "0"), ("def-c", "0", "0"),
                  ("vir-aab", "1/2", "1/3"), ("vir-aa", "1/2", "0"), ("vir-ba", "1/2", "0")]
IRREDUCIBLE_DEFAULTS = [("1/2", "0"), ("2", "1/3"), ("0", "0")]
VIR_SIMPLE_DEFAULTS = [("1/2", "7"), ("0", "0"), ("3", "1/2"), ("0", "1")]
SERIES_DEFAULTS = ["aab", "def-a", "def-b", "def-c"]

Opts = Dict[str, object]


class UsageError(ValueError):
    pass


def _radius(opts: Opts, default: int) -> int:
    r = opts.get("radius")
    return default if r is None else int(r)


def run_jacobi(opts: Opts) -> List[CheckReport]:
    return [check_jacobi(Window.square(_radius(opts, 3)))]


def run_subalg(opts: Opts) -> List[CheckReport]:
    return [check_subalgebras(Window.square(_radius(opts, 3)))]


def _specs(opts: Opts, defaults) -> List[ModuleSpec]:
    if opts.get("family"):
        return [ModuleSpec.from_cli(opts["family"], opts.get("a") or "0", opts.get("b") or "0")]
    return [ModuleSpec.from_cli(*d) for d in defaults]


def run_axiom(opts: Opts) -> List[CheckReport]:
    w = Window.square(_radius(opts, 3))
    return [check_module_axiom(spec, w) for spec in _specs(opts, AXIOM_DEFAULTS)]


def run_axiom_sym(opts: Opts) -> List[CheckReport]:
    fam = opts.get("family") or "aab"
    spec = ModuleSpec.from_cli(fam, opts.get("a") or "sym", opts.get("b") or "sym")
    return [check_axiom_symbolic(spec)]


def run_lemma1_det(opts: Opts) -> List[CheckReport]:
    return [verify_delta_factorization()]


def run_eliminate(opts: Opts) -> List[CheckReport]:
    return [eliminate_cases(smax=int(opts.get("smax") or 50))]


def run_closed_form(opts: Opts) -> List[CheckReport]:
    return [verify_closed_form()]


def run_hard(opts: Opts) -> List[CheckReport]:
    return [verify_hard_factorization()]


def run_outcomes(opts: Opts) -> List[CheckReport]:
    return [verify_case_outcomes()]


def run_deform(opts: Opts) -> List[CheckReport]:
    r = _radius(opts, 3)
    if r < 3:
        raise UsageError("deform needs --radius 3 or more")
    cases = [int(opts["case"])] if opts.get("case") else sorted(CASES)
    out = [solve_deformation_case(c, r)[1] for c in cases]
    if opts.get("stability"):
        out += [window_stability(c, r, r + 1) for c in cases if len(CASES[c].families) == 1]
    return out


def run_series(opts: Opts) -> List[CheckReport]:
    r = _radius(opts, 3)
    w = Window.square(r)
    names = [opts["family"]] if opts.get("family") else SERIES_DEFAULTS
    out = []
    for name in names:
        spec = ModuleSpec.from_cli(name, opts.get("a") or "0", opts.get("b") or "0")
        out.append(composition_series(spec, w, w)[1])
    return out


def irreducibility_matches(a, b, r: int) -> CheckReport:
    """Window result against the criterion: irreducible unless a and b are both integers."""
    spec = ModuleSpec.from_cli("aab", a, b)
    w = Window.square(r)
    rep = window_irreducible(spec, w, w)
    reducible = is_integer(spec.a) and is_integer(spec.b)
    if reducible:
        seed = [int(-spec.a), int(spec.b) - 1]
        ok = rep.status == FAIL and rep.witness.get("seed") == seed
    else:
        ok = rep.status == PASS
    return CheckReport(
        check="irreducible-criterion",
        status=PASS if ok else FAIL,
        paper_ref=rep.paper_ref,
        witness={"a": spec.a, "b": spec.b, "expected": "reducible" if reducible else "irreducible",
                 "window_status": rep.status, "window_witness": rep.witness},
        elapsed_ms=rep.elapsed_ms,
        notes=rep.notes,
    )


def run_irreducible(opts: Opts) -> List[CheckReport]:
    r = _radius(opts, 2)
    if opts.get("a") is not None or opts.get("b") is not None:
        spec = ModuleSpec.from_cli("aab", opts.get("a") or "0", opts.get("b") or "0")
        w = Window.square(r)
        return [window_irreducible(spec, w, w)]
    return [irreducibility_matches(a, b, r) for a, b in IRREDUCIBLE_DEFAULTS]


def run_rho(opts: Opts) -> List[CheckReport]:
    levels = [int(x) for x in str(opts.get("levels") or "0,1,2").split(",")]
    a = parse_rational(opts.get("a") or "1/2")
    b = parse_rational(opts.get("b") or "0")
    return [rho_separation(a, b, levels)]


def run_vir_simple(opts: Opts) -> List[CheckReport]:
    if opts.get("a") is not None or opts.get("b") is not None:
        pairs = [(opts.get("a") or "0", opts.get("b") or "0")]
    else:
        pairs = VIR_SIMPLE_DEFAULTS
    return [vir_simplicity_report(parse_rational(a), parse_rational(b)) for a, b in pairs]


def run_vir_iso(opts: Opts) -> List[CheckReport]:
    a = parse_param(opts.get("a") or "1/2", "a")
    r = _radius(opts, 4)
    return [vir_check_isomorphism(a, (-r, r))]


REGISTRY: Dict[str, Tuple[Callable[[Opts], List[CheckReport]], str]] = {
    "jacobi": (run_jacobi, "Jacobi identity on all basis triples of the window"),
    "subalg": (run_subalg, "the two Virasoro subalgebras"),
    "axiom": (run_axiom, "module axiom on the window (all seven families unless --family)"),
    "axiom-sym": (run_axiom_sym, "symbolic module axiom for the generic coefficient"),
    "lemma1-det": (run_lemma1_det, "three-term relations and their determinant factorization"),
    "eliminate-cases": (run_eliminate, "elimination of the exceptional determinant cases"),
    "closed-form": (run_closed_form, "closed-form coefficient against its governing relations"),
    "hard-factor": (run_hard, "factorization of the diagonal bracket relation"),
    "case-outcomes": (run_outcomes, "special-level relations for the closed form"),
    "deform": (run_deform, "deformation linear systems, cases 1-7"),
    "series": (run_series, "composition series diagrams"),
    "irreducible": (run_irreducible, "window irreducibility"),
    "rho": (run_rho, "rho-operator level separation"),
    "vir-simple": (run_vir_simple, "Virasoro simplicity criterion"),
    "vir-iso": (run_vir_iso, "Virasoro isomorphism A_{a,1} = A_{a,0}"),
}


def profile_tasks(profile: str) -> List[Tuple[str, Opts]]:
    p = PROFILES[profile]
    r, rb, smax = p["radius"], p["radius_big"], p["smax"]
    return [
        ("jacobi", {"radius": rb}),
        ("subalg", {"radius": rb}),
        ("axiom", {"radius": r}),
        ("axiom-sym", {}),
        ("axiom-sym", {"family": "vir-aab"}),
        ("lemma1-det", {}),
        ("eliminate-cases", {"smax": smax}),
        ("closed-form", {}),
        ("hard-factor", {}),
        ("case-outcomes", {}),
        ("deform", {"radius": rb, "stability": profile == "full"}),
        ("series", {"radius": rb}),
        ("irreducible", {"radius": r}),
        ("rho", {}),
        ("vir-simple", {}),
        ("vir-iso", {"radius": rb}),
    ]


def _execute(task: Tuple[str, Opts]) -> List[dict]:
    name, opts = task
    return [rep.to_json() for rep in REGISTRY[name][0](opts)]


def run_tasks(tasks: Sequence[Tuple[str, Opts]], jobs: int = 1) -> List[dict]:
    """Run tasks (in parallel when jobs > 1); records keep task order."""
    if jobs <= 1 or len(tasks) <= 1:
        results = [_execute(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_execute, tasks))
    return [rec for chunk in results for rec in chunk]


def summarize(records: List[dict], elapsed_ms: int) -> dict:
    counts = {s: sum(r["status"] == s for r in records) for s in (PASS, FAIL, "inconclusive")}
    return {"status": worst_status(r["status"] for r in records), "counts": counts,
            "records": len(records), "elapsed_ms": elapsed_ms}


def render(records: List[dict], summary: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"records": records, "summary": summary}, indent=2, sort_keys=False)
    lines = [CheckReport.from_json(r).text_line() for r in records]
    c = summary["counts"]
    lines.append(f"summary: {summary['status']} ({c['pass']} pass, {c['fail']} fail, "
                 f"{c['inconclusive']} inconclusive) in {summary['elapsed_ms']} ms")
    return "\n".join(lines)


def _family(text: str) -> str:
    if text not in CLI_NAMES:
        raise argparse.ArgumentTypeError(f"unknown family {text!r}; choose from {', '.join(CLI_NAMES)}")
    return text


def _param(text: str) -> str:
    if text.strip() != "sym":
        try:
            Fraction(parse_rational(text))
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"expected p/q or 'sym', got {text!r}") from None
    return text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--output", help="also write the report to this file")
    common.add_argument("--jobs", type=int, default=1, help="parallel worker processes")

    parser = argparse.ArgumentParser(prog="blockrep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, help_text) in REGISTRY.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--radius", type=int, help="symmetric window [-N,N]^2")
        if name in ("axiom", "axiom-sym", "series"):
            p.add_argument("--family", type=_family)
        if name in ("axiom", "axiom-sym", "series", "irreducible", "rho", "vir-simple", "vir-iso"):
            p.add_argument("--a", type=_param)
            p.add_argument("--b", type=_param)
        if name == "eliminate-cases":
            p.add_argument("--smax", type=int, default=50)
        if name == "deform":
            p.add_argument("--case", type=int, choices=sorted(CASES))
            p.add_argument("--stability", action="store_true", help="also compare with radius + 1")
        if name == "rho":
            p.add_argument("--levels", default="0,1,2")
    p = sub.add_parser("all", parents=[common], help="run every check under a profile")
    p.add_argument("--profile", choices=sorted(PROFILES), default="quick")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    if args.command == "all":
        tasks = profile_tasks(args.profile)
    else:
        opts = {k: v for k, v in vars(args).items() if k not in ("command", "format", "output", "jobs")}
        tasks = [(args.command, opts)]
    start = time.perf_counter()
    try:
        records = run_tasks(tasks, args.jobs)
    except (UsageError, ValueError) as exc:
        parser.error(str(exc))
    summary = summarize(records, int((time.perf_counter() - start) * 1000))
    text = render(records, summary, args.format)
    print(text)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    return 0 if summary["status"] == PASS else 1


if __name__ == "__main__":
    sys.exit(main())
