"""Finitely supported linear combinations of Z^2-indexed basis symbols."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Mapping, NamedTuple, Tuple, Union

from .exact.poly import MultiPoly, parse_poly
from .exact.rational import format_rational, normalize

Coeff = Union[int, Fraction, MultiPoly]


class GenIndex(NamedTuple):
    i: int
    j: int

    def __add__(self, other):  # type: ignore[override]
        return GenIndex(self.i + other[0], self.j + other[1])

    def __neg__(self):
        return GenIndex(-self.i, -self.j)


@dataclass(frozen=True)
class Window:
    i_min: int
    i_max: int
    j_min: int
    j_max: int

    def __post_init__(self):
        if self.i_min > self.i_max or self.j_min > self.j_max:
            raise ValueError(f"empty window {self}")

    @classmethod
    def square(cls, radius: int) -> "Window":
        return cls(-radius, radius, -radius, radius)

    @classmethod
    def point(cls, i: int, j: int) -> "Window":
        return cls(i, i, j, j)

    def __contains__(self, idx) -> bool:
        return self.i_min <= idx[0] <= self.i_max and self.j_min <= idx[1] <= self.j_max

    def points(self) -> Iterator[GenIndex]:
        for i in range(self.i_min, self.i_max + 1):
            for j in range(self.j_min, self.j_max + 1):
                yield GenIndex(i, j)

    def __len__(self) -> int:
        return (self.i_max - self.i_min + 1) * (self.j_max - self.j_min + 1)

    def padded(self, r: int) -> "Window":
        return Window(self.i_min - r, self.i_max + r, self.j_min - r, self.j_max + r)

    @property
    def radius(self) -> int:
        return max(abs(self.i_min), abs(self.i_max), abs(self.j_min), abs(self.j_max))

    def __str__(self) -> str:
        return f"[{self.i_min},{self.i_max}]x[{self.j_min},{self.j_max}]"


def _clean(c: Coeff) -> Coeff:
    if isinstance(c, MultiPoly):
        return c
    return normalize(c)


class LinComb:
    """Immutable sum of ``coefficient * symbol(i,j)`` terms with no zero coefficients."""

    __slots__ = ("support",)
    symbol = "e"

    def __init__(self, support: Mapping[Tuple[int, int], Coeff] | None = None):
        clean: Dict[GenIndex, Coeff] = {}
        for idx, c in (support or {}).items():
            idx = GenIndex(*idx)
            if idx in clean:
                c = clean[idx] + c
            c = _clean(c)
            if c:
                clean[idx] = c
            else:
                clean.pop(idx, None)
        self.support: Dict[GenIndex, Coeff] = clean

    @classmethod
    def basis(cls, i: int, j: int, coeff: Coeff = 1):
        return cls({(i, j): coeff})

    @classmethod
    def zero(cls):
        return cls()

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        out = dict(self.support)
        for idx, c in other.support.items():
            out[idx] = out[idx] + c if idx in out else c
        return type(self)(out)

    def __neg__(self):
        return type(self)({k: -c for k, c in self.support.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar: Coeff):
        if isinstance(scalar, LinComb):
            return NotImplemented
        return type(self)({k: c * scalar for k, c in self.support.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.support
        if type(other) is not type(self):
            return NotImplemented
        return self.support == other.support

    def __hash__(self) -> int:
        return hash(frozenset((k, str(v)) for k, v in self.support.items()))

    def __bool__(self) -> bool:
        return bool(self.support)

    def __iter__(self):
        return iter(sorted(self.support.items()))

    def __len__(self) -> int:
        return len(self.support)

    def coefficient(self, i: int, j: int) -> Coeff:
        return self.support.get(GenIndex(i, j), 0)

    def __str__(self) -> str:
        if not self.support:
            return "0"
        parts = []
        for idx, c in sorted(self.support.items()):
            sym = f"{self.symbol}({idx.i},{idx.j})"
            if isinstance(c, MultiPoly):
                if c.is_constant():
                    c = c.constant_value()
                else:
                    parts.append(("+", f"({c})*{sym}"))
                    continue
            neg = c < 0
            a = -c if neg else c
            body = sym if a == 1 else f"{format_rational(a)}*{sym}"
            parts.append(("-" if neg else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"

    @classmethod
    def parse(cls, text: str):
        """Parse e.g. ``"3/2*L(1,0) - L(0,-2)"`` (rational coefficients only)."""
        sym = re.escape(cls.symbol)
        pat = re.compile(rf"([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?{sym}\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")
        text = text.strip()
        if text == "0":
            return cls()
        pos = 0
        terms: Dict[Tuple[int, int], Coeff] = {}
        while pos < len(text):
            m = pat.match(text, pos)
            if not m:
                raise ValueError(f"cannot parse {text[pos:]!r}")
            if pos > 0 and not m.group(1):
                raise ValueError(f"missing sign before {m.group(0)!r}")
            c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            if m.group(1) == "-":
                c = -c
            idx = (int(m.group(3)), int(m.group(4)))
            terms[idx] = terms.get(idx, 0) + c
            pos = m.end()
            while pos < len(text) and text[pos] == " ":
                pos += 1
        return cls(terms)


def coerce_coeff(text: str) -> Coeff:
    return parse_poly(text)
