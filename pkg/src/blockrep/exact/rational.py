"""Exact scalars.

The scalar field is the rationals, backed by :class:`fractions.Fraction`.
Values that happen to be integral are normalised to plain ``int`` inside
polynomials because integer arithmetic is considerably faster.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Rational = Fraction
Scalar = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def normalize(c: Scalar) -> Scalar:
    """Return ``c`` as an ``int`` when it is integral, else as a reduced Fraction."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return int(c)
    raise TypeError(f"not an exact scalar: {c!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``. Decimal points are rejected."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational {text!r} (expected 'p/q' or 'p')")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(c: Scalar) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def is_integer(c: Scalar) -> bool:
    return Fraction(c).denominator == 1
