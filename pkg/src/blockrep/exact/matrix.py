"""Polynomial matrices: determinants and resultants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .poly import MultiPoly, PolyLike, _merge_vars, divexact
from .rational import Scalar, normalize


@dataclass(frozen=True)
class PolyMatrix:
    rows: tuple[tuple[MultiPoly, ...], ...]

    def __init__(self, rows: Sequence[Sequence[PolyLike]]):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be at least 1x1")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("matrix rows have unequal lengths")
        vars: tuple[str, ...] = ()
        for r in rows:
            for e in r:
                if isinstance(e, MultiPoly):
                    vars = _merge_vars(vars, e.vars)
        object.__setattr__(
            self,
            "rows",
            tuple(tuple(MultiPoly.coerce(e, vars).with_vars(vars) for e in r) for r in rows),
        )

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, idx: tuple[int, int]) -> MultiPoly:
        r, c = idx
        return self.rows[r][c]

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in r] for r in self.rows])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([list(col) for col in zip(*self.rows)])


def _cofactor_det(m: list[list[MultiPoly]]) -> MultiPoly:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = MultiPoly.constant(0, m[0][0].vars)
    for c in range(n):
        if m[0][c].is_zero():
            continue
        minor = [row[:c] + row[c + 1:] for row in m[1:]]
        term = m[0][c] * _cofactor_det(minor)
        total = total + term if c % 2 == 0 else total - term
    return total


def _bareiss_det(m: list[list[MultiPoly]]) -> MultiPoly:
    n = len(m)
    a = [list(r) for r in m]
    sign = 1
    prev = MultiPoly.constant(1, a[0][0].vars)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if swap is None:
                return MultiPoly.constant(0, a[0][0].vars)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q = divexact(num, prev)
                if q is None:
                    raise ArithmeticError("Bareiss step produced a non-exact quotient")
                a[i][j] = q
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def poly_det(m: PolyMatrix | Sequence[Sequence[PolyLike]]) -> MultiPoly:
    """Exact determinant: cofactor expansion up to 4x4, fraction-free elimination above."""
    if not isinstance(m, PolyMatrix):
        m = PolyMatrix(m)
    rows, cols = m.shape
    if rows != cols:
        raise ValueError(f"determinant of a non-square {rows}x{cols} matrix")
    data = [list(r) for r in m.rows]
    if rows <= 4:
        return _cofactor_det(data)
    return _bareiss_det(data)


def sylvester_matrix(p: MultiPoly, q: MultiPoly, var: str) -> PolyMatrix:
    cp = list(reversed(p.coefficients_in(var)))
    cq = list(reversed(q.coefficients_in(var)))
    dp, dq = len(cp) - 1, len(cq) - 1
    size = dp + dq
    zero = MultiPoly.constant(0)
    rows = []
    for r in range(dq):
        rows.append([zero] * r + cp + [zero] * (size - r - len(cp)))
    for r in range(dp):
        rows.append([zero] * r + cq + [zero] * (size - r - len(cq)))
    return PolyMatrix(rows)


def resultant(p: PolyLike, q: PolyLike, var: str) -> MultiPoly:
    """Sylvester resultant of ``p`` and ``q`` with respect to ``var``.

    Degenerate degrees follow the usual convention: ``res = p^deg(q)`` when
    ``p`` is a nonzero constant in ``var`` (symmetrically for ``q``), ``1``
    when both are nonzero constants, ``0`` when either is zero.
    """
    p = MultiPoly.coerce(p)
    q = MultiPoly.coerce(q)
    if p.is_zero() or q.is_zero():
        return MultiPoly.constant(0, _merge_vars(p.vars, q.vars))
    dp, dq = p.degree(var), q.degree(var)
    if dp == 0 and dq == 0:
        return MultiPoly.constant(1, _merge_vars(p.vars, q.vars))
    if dp == 0:
        return p ** dq
    if dq == 0:
        return q ** dp
    return poly_det(sylvester_matrix(p, q, var))


# univariate helpers used by the elimination screen


def univariate_gcd(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Monic gcd of two polynomials in a single variable ``var`` over the rationals."""
    for f in (p, q):
        extra = [v for v in f.free_vars() if v != var]
        if extra:
            raise ValueError(f"univariate gcd got extra variables {extra}")
    a = [Fraction(c.constant_value()) for c in p.coefficients_in(var)] if p else []
    b = [Fraction(c.constant_value()) for c in q.coefficients_in(var)] if q else []

    def trim(f):
        while f and f[-1] == 0:
            f.pop()
        return f

    a, b = trim(a), trim(b)
    while b:
        r = list(a)
        while len(r) >= len(b) and r:
            f = r[-1] / b[-1]
            shift = len(r) - len(b)
            for k, c in enumerate(b):
                r[k + shift] -= f * c
            trim(r)
        a, b = b, r
    if not a:
        return MultiPoly.constant(0, (var,))
    lead = a[-1]
    return MultiPoly({(k,): c / lead for k, c in enumerate(a)}, (var,))


def _divisors(n: int, limit: int = 10**6) -> list[int] | None:
    n = abs(n)
    if n == 0:
        return [0]
    out = []
    d = 1
    while d * d <= n:
        if d > limit:
            return None
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def rational_roots(p: MultiPoly, var: str) -> list[Fraction] | None:
    """All rational roots of a univariate polynomial (rational-root theorem).

    Returns ``None`` if the coefficients are too large to enumerate divisors.
    """
    coeffs = [Fraction(c.constant_value()) for c in p.coefficients_in(var)]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("the zero polynomial has every value as a root")
    roots = []
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(coeffs) <= 1:
        return roots
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    lead_div = _divisors(ints[-1])
    const_div = _divisors(ints[0])
    if lead_div is None or const_div is None:
        return None
    for num in const_div:
        for d in lead_div:
            for cand in (Fraction(num, d), Fraction(-num, d)):
                if cand in roots:
                    continue
                val = sum(c * cand**k for k, c in enumerate(ints))
                if val == 0:
                    roots.append(cand)
    return sorted(roots)


def as_scalar(p: MultiPoly) -> Scalar:
    return normalize(p.constant_value())
