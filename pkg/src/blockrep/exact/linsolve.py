"""Exact linear algebra over the rationals."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Sequence

from .rational import Scalar


@dataclass(frozen=True)
class Inconsistent:
    """Returned instead of a solution space when ``A x = b`` has no solution.

    ``row``/``rhs`` is the first input equation that reduced to ``0 = c``.
    """

    row: Mapping[int, Fraction]
    rhs: Fraction

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class SolutionSpace:
    particular: tuple[Fraction, ...]
    nullspace_basis: tuple[tuple[Fraction, ...], ...]
    variable_names: tuple[Hashable, ...] = field(default=())

    @property
    def dimension(self) -> int:
        return len(self.nullspace_basis)

    def point(self, coeffs: Sequence[Scalar]) -> tuple[Fraction, ...]:
        if len(coeffs) != self.dimension:
            raise ValueError("wrong number of nullspace coefficients")
        out = list(self.particular)
        for t, v in zip(coeffs, self.nullspace_basis):
            for k, x in enumerate(v):
                out[k] += t * x
        return tuple(out)

    def as_dict(self, vec: Sequence[Fraction]) -> dict:
        return dict(zip(self.variable_names, vec))


class RowReducer:
    """Incremental sparse Gauss-Jordan elimination.

    Rows are dicts ``{column: coefficient}`` with an optional right-hand side.
    Each added row is reduced against the stored pivots; rows that reduce to
    ``0 = 0`` are dropped, ``0 = c`` with ``c != 0`` marks the system
    inconsistent. Stored rows are kept fully reduced (RREF).
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: Dict[int, tuple[Dict[int, Fraction], Fraction]] = {}
        self.inconsistent: tuple[Dict[int, Fraction], Fraction] | None = None
        self.rows_seen = 0

    def _reduce(self, row: Dict[int, Fraction], rhs: Fraction) -> tuple[Dict[int, Fraction], Fraction]:
        # one pass suffices: stored pivot rows contain no other pivot column
        row = dict(row)
        for col in [c for c in row if c in self.pivots]:
            f = row[col]
            prow, prhs = self.pivots[col]
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
            rhs = rhs - f * prhs
        return row, rhs

    def add(self, row: Mapping[int, Scalar], rhs: Scalar = 0) -> bool:
        """Add one equation; return True if it increased the rank."""
        self.rows_seen += 1
        clean = {c: Fraction(v) for c, v in row.items() if v}
        row_r, rhs_r = self._reduce(clean, Fraction(rhs))
        if not row_r:
            if rhs_r and self.inconsistent is None:
                self.inconsistent = (clean, Fraction(rhs))
            return False
        col = min(row_r)
        f = row_r[col]
        row_r = {c: v / f for c, v in row_r.items()}
        rhs_r = rhs_r / f
        # keep RREF: eliminate the new pivot column from existing rows
        for pc, (prow, prhs) in list(self.pivots.items()):
            g = prow.get(col)
            if g:
                for c, v in row_r.items():
                    nv = prow.get(c, 0) - g * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
                self.pivots[pc] = (prow, prhs - g * rhs_r)
        self.pivots[col] = (row_r, rhs_r)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def in_row_space(self, row: Mapping[int, Scalar], rhs: Scalar = 0) -> bool:
        r, c = self._reduce({k: Fraction(v) for k, v in row.items() if v}, Fraction(rhs))
        return not r and not c

    def solution(self, names: Sequence[Hashable] = ()) -> SolutionSpace | Inconsistent:
        if self.inconsistent is not None:
            return Inconsistent(*self.inconsistent)
        n = self.ncols
        particular = [Fraction(0)] * n
        for col, (row, rhs) in self.pivots.items():
            particular[col] = rhs
        free = [c for c in range(n) if c not in self.pivots]
        basis = []
        for fc in free:
            v = [Fraction(0)] * n
            v[fc] = Fraction(1)
            for col, (row, _) in self.pivots.items():
                if fc in row:
                    v[col] = -row[fc]
            basis.append(tuple(v))
        return SolutionSpace(tuple(particular), tuple(basis), tuple(names) or tuple(range(n)))


def solve_linear(
    a: Sequence[Sequence[Scalar]],
    b: Sequence[Scalar],
    names: Sequence[Hashable] = (),
) -> SolutionSpace | Inconsistent:
    """Solve ``a x = b`` exactly; an :class:`Inconsistent` is returned when there is no solution."""
    if len(a) != len(b):
        raise ValueError("row count of A does not match length of b")
    ncols = len(a[0]) if a else len(names)
    if any(len(r) != ncols for r in a):
        raise ValueError("A is not rectangular")
    red = RowReducer(ncols)
    for r, rhs in zip(a, b):
        red.add({c: v for c, v in enumerate(r) if v}, rhs)
    return red.solution(names)


def rational_det(m: Sequence[Sequence[Scalar]]) -> Fraction:
    """Determinant of a square rational matrix by Gaussian elimination."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    a = [[Fraction(x) for x in r] for r in m]
    det = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for r in range(k + 1, n):
            f = a[r][k] / a[k][k]
            if f:
                for c in range(k, n):
                    a[r][c] -= f * a[k][c]
    return det


def mat_vec(a: Sequence[Sequence[Scalar]], x: Iterable[Scalar]) -> List[Fraction]:
    x = list(x)
    return [sum((Fraction(v) * xv for v, xv in zip(r, x)), Fraction(0)) for r in a]
