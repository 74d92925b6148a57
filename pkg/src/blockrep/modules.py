"""Module families over the Block algebra and the Virasoro intermediate series.

Every family maps a basis generator and a basis vector to a scalar multiple of
a single basis vector. ``basis_action`` returns that ``(target, coefficient)``
pair; ``act`` extends it linearly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Tuple, Union

from .exact.poly import MultiPoly, symbols
from .exact.rational import is_integer, normalize, parse_rational
from .lie import structure_constant
from .lincomb import Coeff, GenIndex, LinComb, Window
from .report import FAIL, PASS, CheckReport, stopwatch

BLOCK_AAB = "BlockAab"
BLOCK_DEF_A = "BlockDefA"
BLOCK_DEF_B = "BlockDefB"
BLOCK_DEF_C = "BlockDefC"
VIR_AAB = "VirAab"
VIR_AA = "VirAa"
VIR_BA = "VirBa"

BLOCK_FAMILIES = (BLOCK_AAB, BLOCK_DEF_A, BLOCK_DEF_B, BLOCK_DEF_C)
DEFORMED = (BLOCK_DEF_A, BLOCK_DEF_B, BLOCK_DEF_C)
VIR_FAMILIES = (VIR_AAB, VIR_AA, VIR_BA)

CLI_NAMES = {
    "aab": BLOCK_AAB,
    "def-a": BLOCK_DEF_A,
    "def-b": BLOCK_DEF_B,
    "def-c": BLOCK_DEF_C,
    "vir-aab": VIR_AAB,
    "vir-aa": VIR_AA,
    "vir-ba": VIR_BA,
}

Param = Union[int, Fraction, MultiPoly]


class SymbolicBranchError(ValueError):
    """Piecewise families cannot decide their branches for symbolic parameters."""


class ModVector(LinComb):
    __slots__ = ()
    symbol = "v"


def v(k: int, l: int = 0, coeff: Coeff = 1) -> ModVector:
    return ModVector.basis(k, l, coeff)


def parse_param(text: str, name: str) -> Param:
    """``"sym"`` gives the indeterminate ``name``; anything else must be a ``p/q`` rational."""
    if text.strip() == "sym":
        return MultiPoly.variable(name)
    return normalize(parse_rational(text))


@dataclass(frozen=True)
class ModuleSpec:
    family: str
    a: Param = 0
    b: Param = 0

    def __post_init__(self):
        if self.family not in BLOCK_FAMILIES + VIR_FAMILIES:
            raise ValueError(f"unknown module family {self.family!r}")
        if self.family in DEFORMED:
            if self.is_symbolic:
                raise SymbolicBranchError(
                    f"{self.family} is piecewise; use numeric mode (it has no free parameters)"
                )
            if self.a != 0 or self.b != 0:
                raise ValueError(f"{self.family} deforms A_(0,0) and takes no parameters")
        for name in ("a", "b"):
            val = getattr(self, name)
            if not isinstance(val, MultiPoly):
                object.__setattr__(self, name, normalize(Fraction(val)))

    @classmethod
    def from_cli(cls, name: str, a: str = "0", b: str = "0") -> "ModuleSpec":
        try:
            family = CLI_NAMES[name]
        except KeyError:
            raise ValueError(f"unknown family {name!r}; choose from {', '.join(CLI_NAMES)}") from None
        if family in DEFORMED:
            if a.strip() != "0" or b.strip() != "0":
                raise ValueError(f"{family} deforms A_(0,0) and takes no parameters")
            return cls(family)
        return cls(family, parse_param(a, "a"), parse_param(b, "b"))

    @property
    def is_symbolic(self) -> bool:
        return isinstance(self.a, MultiPoly) or isinstance(self.b, MultiPoly)

    @property
    def is_block(self) -> bool:
        return self.family in BLOCK_FAMILIES

    def __str__(self) -> str:
        if self.family in DEFORMED:
            return self.family
        if self.family in (VIR_AA, VIR_BA):
            return f"{self.family}(a={self.a})"
        return f"{self.family}(a={self.a}, b={self.b})"


def _deformed_a00(i: int, j: int, k: int, l: int) -> int:
    return (j + 1) * k - (l + 1) * i


def basis_action(spec: ModuleSpec, i: int, j: int, k: int, l: int = 0) -> Tuple[GenIndex, Param]:
    """Action of L(i,j) (or L_i for Virasoro families, with j = l = 0) on v(k,l)."""
    fam = spec.family
    if fam == BLOCK_AAB:
        a, b = spec.a, spec.b
        return GenIndex(i + k, j + l), (j + 1) * (a + k) + (b - 1 - l) * i
    if fam == BLOCK_DEF_A:
        if (k, l) == (0, -2):
            return GenIndex(i, j - 2), 0
        c = _deformed_a00(i, j, k, l)
        if i + k == 0 and l + j == -2:
            c += i
        return GenIndex(i + k, j + l), c
    if fam in (BLOCK_DEF_B, BLOCK_DEF_C):
        # special rules first, then the generic branch
        if (k, l) == (0, -1):
            return GenIndex(i, j - 1), i
        if (k, l) == (0, -2):
            return GenIndex(i, j - 2), (i if fam == BLOCK_DEF_B else 0)
        if (i + k, j + l) == (0, -1):
            return GenIndex(0, -1), 0
        c = _deformed_a00(i, j, k, l)
        if fam == BLOCK_DEF_C and i + k == 0 and l + j == -2:
            c += i
        return GenIndex(i + k, j + l), c
    if j != 0 or l != 0:
        raise ValueError("Virasoro families use generators L(i,0) and vectors v(k,0)")
    a = spec.a
    if fam == VIR_AAB:
        return GenIndex(i + k, 0), a + k + spec.b * i
    if fam == VIR_AA:
        return GenIndex(i + k, 0), (i * (i + a) if k == 0 else i + k)
    if fam == VIR_BA:
        return GenIndex(i + k, 0), (-i * (i + a) if k == -i else k)
    raise AssertionError(fam)


def act(spec: ModuleSpec, gen: Tuple[int, int], vec: ModVector) -> ModVector:
    i, j = gen
    out: dict = {}
    for (k, l), c in vec.support.items():
        tgt, coef = basis_action(spec, i, j, k, l)
        if coef:
            out[tgt] = out.get(tgt, 0) + coef * c
    return ModVector(out)


def lie_bracket_coefficient(spec: ModuleSpec, p: int, q: int, m: int, s: int) -> int:
    if spec.is_block:
        return structure_constant(p, q, m, s)
    return m - p


_BLOCK_VARS = ("i", "j", "k", "l", "a", "b")
_VIR_VARS = ("i", "k", "a", "b")


def generic_coefficient(spec: ModuleSpec) -> MultiPoly:
    """Action coefficient as a polynomial in the generator/vector indices and a, b.

    Block families use variables ``i, j`` (generator), ``k, l`` (vector);
    VirAab uses ``i`` (generator), ``k`` (vector). Numeric parameters are
    substituted in; symbolic ones stay as ``a``, ``b``.
    """
    if spec.family in DEFORMED or spec.family in (VIR_AA, VIR_BA):
        raise SymbolicBranchError(f"{spec.family} is piecewise and has no single generic coefficient")
    a = spec.a if isinstance(spec.a, MultiPoly) else MultiPoly.constant(spec.a)
    b = spec.b if isinstance(spec.b, MultiPoly) else MultiPoly.constant(spec.b)
    if spec.family == BLOCK_AAB:
        i, j, k, l = symbols("i j k l")
        return ((j + 1) * (a + k) + (b - 1 - l) * i).with_vars(_BLOCK_VARS)
    i, k = symbols("i k")
    return (a + k + b * i).with_vars(_VIR_VARS)


def _axiom_defect(spec: ModuleSpec, p: int, q: int, m: int, s: int, i: int, t: int):
    """x(y v) - y(x v) - [x,y] v for x = L(p,q), y = L(m,s), v = v(i,t); always a single-target scalar."""
    t1, c1 = basis_action(spec, m, s, i, t)
    t2, c2 = basis_action(spec, p, q, *t1)
    t3, c3 = basis_action(spec, p, q, i, t)
    t4, c4 = basis_action(spec, m, s, *t3)
    br = lie_bracket_coefficient(spec, p, q, m, s)
    t5, c5 = basis_action(spec, p + m, q + s, i, t)
    assert t2 == t4 == t5, (t2, t4, t5)
    return t2, c1 * c2 - c3 * c4 - br * c5


def check_module_axiom(spec: ModuleSpec, w: Window) -> CheckReport:
    """Exhaustive module-axiom check over generator pairs and basis vectors indexed by ``w``.

    Virasoro families only use the ``i`` range of ``w``.
    """
    if spec.is_block:
        gens = [(p, q) for p, q in w.points()]
        vecs = gens
    else:
        gens = [(p, 0) for p in range(w.i_min, w.i_max + 1)]
        vecs = gens
    bad = None
    n = 0
    with stopwatch() as t:
        for (p, q), (m, s), (i, tt) in product(gens, gens, vecs):
            n += 1
            tgt, d = _axiom_defect(spec, p, q, m, s, i, tt)
            if d:
                bad = {"x": f"L({p},{q})", "y": f"L({m},{s})", "v": f"v({i},{tt})", "defect": f"({d})*v({tgt.i},{tgt.j})"}
                break
    return CheckReport(
        check="module-axiom",
        status=FAIL if bad else PASS,
        paper_ref="module axiom [x,y]v = x(yv) - y(xv) on basis triples",
        witness=bad or {"family": str(spec), "window": str(w), "triples": n},
        elapsed_ms=t.ms,
    )


def axiom_residual(spec: ModuleSpec, coefficient: Optional[MultiPoly] = None) -> MultiPoly:
    """Symbolic defect of the module axiom with every index symbolic.

    ``coefficient`` overrides the family's generic coefficient (same variables).
    """
    coef = coefficient if coefficient is not None else generic_coefficient(spec)
    if spec.family == BLOCK_AAB:
        p, q, m, s, i, t = symbols("p q m s i t")

        def A(gi, gj, vk, vl):
            return coef.subs({"i": gi, "j": gj, "k": vk, "l": vl})

        br = (q + 1) * m - (s + 1) * p
        return A(p, q, i + m, t + s) * A(m, s, i, t) - A(p, q, i, t) * A(m, s, i + p, t + q) - br * A(p + m, q + s, i, t)
    if spec.family == VIR_AAB:
        p, m, k = symbols("p m k")

        def A(gi, vk):
            return coef.subs({"i": gi, "k": vk})

        return A(p, k + m) * A(m, k) - A(p, k) * A(m, k + p) - (m - p) * A(p + m, k)
    raise SymbolicBranchError(f"{spec.family} is piecewise; symbolic axiom check needs a single-branch family")


def check_axiom_symbolic(spec: ModuleSpec, coefficient: Optional[MultiPoly] = None) -> CheckReport:
    with stopwatch() as t:
        res = axiom_residual(spec, coefficient)
    ok = res.is_zero()
    nvars = len(set(res.free_vars())) if not ok else None
    return CheckReport(
        check="axiom-symbolic",
        status=PASS if ok else FAIL,
        paper_ref="a^{p,q}_{i+m,s+t} a^{m,s}_{i,t} - a^{p,q}_{i,t} a^{m,s}_{i+p,t+q} = ((q+1)m-(s+1)p) a^{p+m,q+s}_{i,t}",
        witness=None if ok else {"residual": str(res), "free_vars": nvars},
        elapsed_ms=t.ms,
    )


def vir_simplicity(a, b) -> bool:
    """Simplicity criterion for the Virasoro module A_{a,b}: a not an integer, or b not in {0, 1}."""
    a, b = Fraction(a), Fraction(b)
    return not is_integer(a) or b not in (0, 1)


def vir_simplicity_report(a, b, radius: int = 6) -> CheckReport:
    """Compare the criterion with a window search for the two kinds of proper submodule.

    A vector x_k killed by every L_i (i != 0) spans a trivial submodule; a
    position k never reached from k' != k spans a complement that is a
    submodule. The search covers i, k in [-radius, radius].
    """
    a, b = Fraction(a), Fraction(b)
    spec = ModuleSpec(VIR_AAB, a, b)
    rng = range(-radius, radius + 1)
    with stopwatch() as t:
        expected = vir_simplicity(a, b)
        killed = [k for k in rng if all(basis_action(spec, i, 0, k)[1] == 0 for i in rng if i)]
        unreached = [k for k in rng if all(basis_action(spec, k - m, 0, m)[1] == 0 for m in rng if m != k)]
        found = bool(killed or unreached)
    ok = expected != found
    return CheckReport(
        check="vir-simplicity",
        status=PASS if ok else FAIL,
        paper_ref="A_{a,b} simple iff a not in Z, or a in Z and b not in {0,1}",
        witness={"a": a, "b": b, "simple": expected, "annihilated": killed, "unreachable": unreached},
        elapsed_ms=t.ms,
        notes=["window evidence on [-%d,%d]" % (radius, radius)],
    )


def vir_check_isomorphism(a: Param, i_range: Tuple[int, int] = (-4, 4)) -> CheckReport:
    """Check that x_k -> (a+k)^{-1} x'_k intertwines A_{a,1} with A_{a,0}.

    Both L_i phi(x_k) and phi(L_i x_k) are multiples of x'_{i+k}; after
    multiplying by (a+k)(a+k+i) the condition is c1 * (a+k) == c0 * (a+k+i)
    where c1, c0 are the b=1 and b=0 action coefficients.
    """
    if not isinstance(a, MultiPoly) and is_integer(Fraction(a)):
        raise ValueError(f"a = {a} is an integer: the map is undefined at k = -a")
    lo, hi = i_range
    src = ModuleSpec(VIR_AAB, a, 1)
    dst = ModuleSpec(VIR_AAB, a, 0)
    bad = None
    with stopwatch() as t:
        for i, k in product(range(lo, hi + 1), repeat=2):
            _, c_src = basis_action(src, i, 0, k, 0)
            _, c_dst = basis_action(dst, i, 0, k, 0)
            lhs = c_src * (a + k)
            rhs = c_dst * (a + k + i)
            if lhs != rhs:
                bad = {"i": i, "k": k, "lhs": lhs, "rhs": rhs}
                break
    return CheckReport(
        check="vir-isomorphism",
        status=FAIL if bad else PASS,
        paper_ref="A_{a,1} isomorphic to A_{a,0} for a not an integer",
        witness=bad or {"a": a, "range": [lo, hi], "map": "x_k -> (a+k)^-1 x'_k"},
        elapsed_ms=t.ms,
    )


__all__ = [
    "BLOCK_AAB",
    "BLOCK_DEF_A",
    "BLOCK_DEF_B",
    "BLOCK_DEF_C",
    "CLI_NAMES",
    "ModVector",
    "ModuleSpec",
    "SymbolicBranchError",
    "VIR_AA",
    "VIR_AAB",
    "VIR_BA",
    "act",
    "axiom_residual",
    "basis_action",
    "check_axiom_symbolic",
    "check_module_axiom",
    "generic_coefficient",
    "vir_check_isomorphism",
    "vir_simplicity",
    "vir_simplicity_report",
    "v",
]
