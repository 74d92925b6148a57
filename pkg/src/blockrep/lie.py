"""The Block type Lie algebra with basis L(i,j) and its Virasoro subalgebras."""

from __future__ import annotations

from itertools import product
from typing import Callable, Optional

from .lincomb import GenIndex, LinComb, Window
from .report import FAIL, PASS, CheckReport, stopwatch

StructureFn = Callable[[int, int, int, int], int]


def structure_constant(i: int, j: int, k: int, l: int) -> int:
    """Coefficient c with [L(i,j), L(k,l)] = c * L(i+k, j+l)."""
    return (j + 1) * k - (l + 1) * i


class LieElement(LinComb):
    __slots__ = ()
    symbol = "L"


def L(i: int, j: int, coeff=1) -> LieElement:
    return LieElement.basis(i, j, coeff)


def bracket(x: LieElement, y: LieElement, structure: StructureFn = structure_constant) -> LieElement:
    out: dict = {}
    for (i, j), cx in x.support.items():
        for (k, l), cy in y.support.items():
            c = structure(i, j, k, l)
            if c:
                idx = (i + k, j + l)
                out[idx] = out.get(idx, 0) + c * cx * cy
    return LieElement(out)


def check_jacobi(w: Window, structure: StructureFn = structure_constant) -> CheckReport:
    """Exhaustive Jacobi identity over basis triples of ``w``.

    All three cyclic terms land on the same basis vector, so the check reduces
    to one scalar per triple.
    """
    pts = list(w.points())
    bad = None
    count = 0
    with stopwatch() as t:
        for (i1, j1), (i2, j2), (i3, j3) in product(pts, repeat=3):
            # [x,[y,z]] + [y,[z,x]] + [z,[x,y]]
            s = (
                structure(i2, j2, i3, j3) * structure(i1, j1, i2 + i3, j2 + j3)
                + structure(i3, j3, i1, j1) * structure(i2, j2, i3 + i1, j3 + j1)
                + structure(i1, j1, i2, j2) * structure(i3, j3, i1 + i2, j1 + j2)
            )
            count += 1
            if s != 0:
                bad = {
                    "x": f"L({i1},{j1})",
                    "y": f"L({i2},{j2})",
                    "z": f"L({i3},{j3})",
                    "jacobi_sum": f"{s}*L({i1 + i2 + i3},{j1 + j2 + j3})",
                }
                break
    return CheckReport(
        check="jacobi",
        status=FAIL if bad else PASS,
        paper_ref="bracket [L(i,j),L(k,l)] = ((j+1)k-(l+1)i) L(i+k,j+l)",
        witness=bad if bad else {"window": str(w), "triples": count, "counterexamples": 0},
        elapsed_ms=t.ms,
    )


def check_subalgebras(w: Window) -> CheckReport:
    """Both L(i,0) and L(i,i) span centerless Virasoro subalgebras: [e_i, e_j] = (j-i) e_{i+j}."""
    bad: Optional[dict] = None
    with stopwatch() as t:
        rng = range(w.i_min, w.i_max + 1)
        for name, emb in (("L0", lambda n: (n, 0)), ("L1", lambda n: (n, n))):
            for i, j in product(rng, repeat=2):
                got = bracket(L(*emb(i)), L(*emb(j)))
                want = L(*emb(i + j), j - i)
                if got != want:
                    bad = {"subalgebra": name, "i": i, "j": j, "got": str(got), "expected": str(want)}
                    break
            if bad:
                break
    return CheckReport(
        check="subalgebras",
        status=FAIL if bad else PASS,
        paper_ref="Virasoro subalgebras spanned by L(i,0) and by L(i,i)",
        witness=bad,
        elapsed_ms=t.ms,
    )


__all__ = [
    "GenIndex",
    "LieElement",
    "L",
    "Window",
    "bracket",
    "check_jacobi",
    "check_subalgebras",
    "structure_constant",
]
