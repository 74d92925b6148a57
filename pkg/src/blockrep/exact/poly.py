"""Sparse multivariate polynomials over the rationals.

A :class:`MultiPoly` carries an ordered tuple of indeterminate names and a
dict mapping exponent tuples (aligned with that order) to nonzero
coefficients. Instances are treated as immutable. Binary operations between
polynomials over different variable tuples first merge the tuples (left
operand's order, then any new names from the right operand).

Monomials are ordered graded-lexicographically with respect to the
declared variable order; that order drives printing and leading terms.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from .rational import Scalar, format_rational, normalize

Monomial = Tuple[int, ...]
PolyLike = Union["MultiPoly", int, Fraction]


def _merge_vars(a: Tuple[str, ...], b: Tuple[str, ...]) -> Tuple[str, ...]:
    if a == b:
        return a
    seen = set(a)
    return a + tuple(v for v in b if v not in seen)


def _grlex_key(m: Monomial) -> Tuple[int, Monomial]:
    return (sum(m), m)


class MultiPoly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None, vars: Sequence[str] = ()):
        self.vars: Tuple[str, ...] = tuple(vars)
        n = len(self.vars)
        clean: Dict[Monomial, Scalar] = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n:
                raise ValueError(f"monomial {m} does not match variables {self.vars}")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            c = normalize(c)
            if c:
                clean[m] = clean.get(m, 0) + c
        self.terms: Dict[Monomial, Scalar] = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, vars: Tuple[str, ...], terms: Dict[Monomial, Scalar]) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    # construction helpers

    @classmethod
    def constant(cls, c: Scalar, vars: Sequence[str] = ()) -> "MultiPoly":
        vars = tuple(vars)
        c = normalize(c)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def variable(cls, name: str, vars: Sequence[str] | None = None) -> "MultiPoly":
        vars = (name,) if vars is None else tuple(vars)
        if name not in vars:
            vars = vars + (name,)
        m = tuple(1 if v == name else 0 for v in vars)
        return cls._raw(vars, {m: 1})

    @classmethod
    def coerce(cls, x: PolyLike, vars: Sequence[str] = ()) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        return cls.constant(x, vars)

    def with_vars(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-embed into a (super)set of indeterminates, in the given order."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = {v: k for k, v in enumerate(vars)}
        n = len(vars)
        terms: Dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            new = [0] * n
            for v, e in zip(self.vars, m):
                if e:
                    if v not in pos:
                        raise ValueError(f"variable {v!r} missing from target order {vars}")
                    new[pos[v]] = e
            terms[tuple(new)] = c
        return MultiPoly._raw(vars, terms)

    def _align(self, other: PolyLike) -> Tuple[Tuple[str, ...], Dict[Monomial, Scalar], Dict[Monomial, Scalar]]:
        if not isinstance(other, MultiPoly):
            c = normalize(other)
            z = (0,) * len(self.vars)
            return self.vars, self.terms, ({z: c} if c else {})
        if other.vars == self.vars:
            return self.vars, self.terms, other.terms
        vars = _merge_vars(self.vars, other.vars)
        return vars, self.with_vars(vars).terms, other.with_vars(vars).terms

    # arithmetic

    def __add__(self, other: PolyLike) -> "MultiPoly":
        if not isinstance(other, (MultiPoly, int, Fraction)):
            return NotImplemented
        vars, a, b = self._align(other)
        if not b:
            return self if vars == self.vars else MultiPoly._raw(vars, dict(a))
        out = dict(a)
        for m, c in b.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = normalize(s) if type(s) is not int else s
            else:
                out.pop(m, None)
        return MultiPoly._raw(vars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.vars, {m: -c for m, c in self.terms.items()})

    def __pos__(self) -> "MultiPoly":
        return self

    def __sub__(self, other: PolyLike) -> "MultiPoly":
        if not isinstance(other, (MultiPoly, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: PolyLike) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other: PolyLike) -> "MultiPoly":
        if not isinstance(other, (MultiPoly, int, Fraction)):
            return NotImplemented
        if not isinstance(other, MultiPoly):
            c = normalize(other)
            if not c:
                return MultiPoly._raw(self.vars, {})
            if c == 1:
                return self
            return MultiPoly._raw(self.vars, {m: normalize(v * c) for m, v in self.terms.items()})
        vars, a, b = self._align(other)
        if len(a) > len(b):
            a, b = b, a
        out: Dict[Monomial, Scalar] = {}
        get = out.get
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple([x + y for x, y in zip(m1, m2)])
                out[m] = get(m, 0) + c1 * c2
        return MultiPoly._raw(vars, {m: normalize(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                raise TypeError("use divexact() for polynomial division")
            other = other.constant_value()
        if not other:
            raise ZeroDivisionError("division of polynomial by zero")
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = MultiPoly.constant(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # comparison / hashing

    def _canonical(self) -> frozenset:
        out = []
        for m, c in self.terms.items():
            out.append((tuple(sorted((v, e) for v, e in zip(self.vars, m) if e)), c))
        return frozenset(out)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            if other.vars == self.vars:
                return self.terms == other.terms
            return self._canonical() == other._canonical()
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._canonical())
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()), 0)

    def free_vars(self) -> Tuple[str, ...]:
        used = [False] * len(self.vars)
        for m in self.terms:
            for k, e in enumerate(m):
                if e:
                    used[k] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``. The zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(m) for m in self.terms)
        if var not in self.vars:
            return 0
        k = self.vars.index(var)
        return max(m[k] for m in self.terms)

    def leading(self) -> Tuple[Monomial, Scalar]:
        """Leading (monomial, coefficient) in graded-lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=_grlex_key)
        return m, self.terms[m]

    def sorted_terms(self) -> Iterator[Tuple[Monomial, Scalar]]:
        for m in sorted(self.terms, key=_grlex_key, reverse=True):
            yield m, self.terms[m]

    def trimmed(self) -> "MultiPoly":
        """Drop indeterminates that do not occur."""
        return self.with_vars(self.free_vars())

    # evaluation and substitution

    def evaluate(self, values: Mapping[str, Scalar]) -> Scalar:
        missing = [v for v in self.free_vars() if v not in values]
        if missing:
            raise KeyError(f"no value for {missing}")
        total: Scalar = 0
        for m, c in self.terms.items():
            t = c
            for v, e in zip(self.vars, m):
                if e:
                    t = t * Fraction(values[v]) ** e
            total += t
        return normalize(Fraction(total))

    def subs(self, bindings: Mapping[str, PolyLike]) -> "MultiPoly":
        """Simultaneous substitution; names not present in ``self.vars`` are ignored."""
        idx = [(k, v) for k, v in enumerate(self.vars) if v in bindings]
        if not idx:
            return self
        bound = {k for k, _ in idx}
        keep = tuple(v for k, v in enumerate(self.vars) if k not in bound)
        keep_pos = [k for k in range(len(self.vars)) if k not in bound]
        out_vars = keep
        for _, v in idx:
            b = bindings[v]
            if isinstance(b, MultiPoly):
                out_vars = _merge_vars(out_vars, b.vars)
        values = {k: MultiPoly.coerce(bindings[v], out_vars).with_vars(out_vars) for k, v in idx}
        # group terms by the exponents of the bound variables
        groups: Dict[Monomial, Dict[Monomial, Scalar]] = {}
        for m, c in self.terms.items():
            key = tuple(m[k] for k, _ in idx)
            rest = tuple(m[k] for k in keep_pos)
            groups.setdefault(key, {})[rest] = c
        powers: Dict[Tuple[int, int], MultiPoly] = {}

        def power(k: int, e: int) -> MultiPoly:
            if (k, e) not in powers:
                powers[(k, e)] = values[k] ** e
            return powers[(k, e)]

        result = MultiPoly._raw(out_vars, {})
        for key, rest_terms in groups.items():
            factor = MultiPoly.constant(1, out_vars)
            for (k, _), e in zip(idx, key):
                if e:
                    factor = factor * power(k, e)
            rest = MultiPoly._raw(keep, rest_terms).with_vars(out_vars)
            result = result + rest * factor
        return result

    def collect(self, vars: Iterable[str]) -> Dict["MultiPoly", "MultiPoly"]:
        """Group by monomials in ``vars``; values are polynomials in the remaining variables."""
        vars = tuple(vars)
        for v in vars:
            if v not in self.vars:
                raise ValueError(f"{v!r} is not an indeterminate of this polynomial")
        sel = [self.vars.index(v) for v in vars]
        rest_pos = [k for k in range(len(self.vars)) if k not in sel]
        rest_vars = tuple(self.vars[k] for k in rest_pos)
        buckets: Dict[Monomial, Dict[Monomial, Scalar]] = {}
        for m, c in self.terms.items():
            key = tuple(m[k] for k in sel)
            buckets.setdefault(key, {})[tuple(m[k] for k in rest_pos)] = c
        out: Dict[MultiPoly, MultiPoly] = {}
        for key in sorted(buckets, key=_grlex_key, reverse=True):
            out[MultiPoly._raw(vars, {key: 1})] = MultiPoly._raw(rest_vars, buckets[key])
        if not out:
            out[MultiPoly._raw(vars, {(0,) * len(vars): 1})] = MultiPoly._raw(rest_vars, {})
        return out

    def coefficients_in(self, var: str) -> list["MultiPoly"]:
        """Coefficient list ``[c_0, c_1, ...]`` with ``self == sum c_n var^n``."""
        if var not in self.vars:
            return [self]
        k = self.vars.index(var)
        rest = self.vars[:k] + self.vars[k + 1:]
        deg = self.degree(var)
        buckets: list[Dict[Monomial, Scalar]] = [dict() for _ in range(max(deg, 0) + 1)]
        for m, c in self.terms.items():
            buckets[m[k]][m[:k] + m[k + 1:]] = c
        return [MultiPoly._raw(rest, b) for b in buckets]

    def content_normalized(self) -> "MultiPoly":
        """Scale to integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            return self
        from math import gcd

        lcm = 1
        for c in self.terms.values():
            d = Fraction(c).denominator
            lcm = lcm * d // gcd(lcm, d)
        scaled = {m: int(c * lcm) for m, c in self.terms.items()}
        g = 0
        for c in scaled.values():
            g = gcd(g, c)
        _, lc = MultiPoly._raw(self.vars, scaled).leading()
        sign = -1 if lc < 0 else 1
        return MultiPoly._raw(self.vars, {m: sign * c // g for m, c in scaled.items()})

    # printing

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, m) if e
            )
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{format_rational(a)}*{mono}"
            else:
                body = format_rational(a)
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r}, vars={self.vars})"


def symbols(names: str | Sequence[str]) -> Tuple[MultiPoly, ...]:
    """``symbols("i j k")`` returns variables sharing the order ``(i, j, k)``."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    names = tuple(names)
    return tuple(MultiPoly.variable(n, names) for n in names)


def divexact(p: MultiPoly, d: PolyLike) -> MultiPoly | None:
    """Exact quotient ``p / d`` or ``None`` when ``d`` does not divide ``p``.

    Runs the single-divisor division algorithm under graded-lex order; the
    remainder is unique, so the first leading term not divisible by
    ``LT(d)`` proves indivisibility.
    """
    d = MultiPoly.coerce(d, p.vars)
    if d.is_zero():
        raise ZeroDivisionError("exact division by the zero polynomial")
    vars = _merge_vars(p.vars, d.vars)
    r = dict(p.with_vars(vars).terms)
    dd = d.with_vars(vars)
    dm, dc = dd.leading()
    dterms = list(dd.terms.items())
    q: Dict[Monomial, Scalar] = {}
    while r:
        m = max(r, key=_grlex_key)
        c = r[m]
        shift = tuple(x - y for x, y in zip(m, dm))
        if any(e < 0 for e in shift):
            return None
        f = normalize(Fraction(c) / Fraction(dc))
        q[shift] = f
        for tm, tc in dterms:
            mm = tuple(x + y for x, y in zip(tm, shift))
            v = r.get(mm, 0) - f * tc
            if v:
                r[mm] = normalize(v)
            else:
                r.pop(mm, None)
    return MultiPoly._raw(vars, q)


def poly_arith(p: PolyLike, q: PolyLike, op: str) -> MultiPoly:
    p = MultiPoly.coerce(p)
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def poly_substitute(p: MultiPoly, bindings: Mapping[str, PolyLike]) -> MultiPoly:
    return p.subs(bindings)


def poly_collect(p: MultiPoly, vars: Iterable[str]) -> Dict[MultiPoly, MultiPoly]:
    return p.collect(vars)


# parsing

_TOKEN_RE = re.compile(r"\s*(?:(\d+\.\d*|\.\d+)|(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[Tuple[str, str]]:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        if m.group(1):
            raise ValueError(f"decimal literals are not allowed: {m.group(1)!r}")
        if m.group(2):
            out.append(("num", m.group(2)))
        elif m.group(3):
            out.append(("name", m.group(3)))
        else:
            out.append(("op", "^" if m.group(4) == "**" else m.group(4)))
        pos = m.end()
    return out


def parse_poly(text: str, vars: Sequence[str] | None = None) -> MultiPoly:
    """Parse e.g. ``"3*i^2*k - 1/2*b0"``; unknown names become new indeterminates."""
    tokens = _tokenize(text)
    base = tuple(vars or ())
    k = 0

    def peek():
        return tokens[k] if k < len(tokens) else ("end", "")

    def take():
        nonlocal k
        tok = peek()
        k += 1
        return tok

    def expr() -> MultiPoly:
        left = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            right = term()
            left = left + right if op == "+" else left - right
        return left

    def term() -> MultiPoly:
        left = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            right = unary()
            left = left * right if op == "*" else left / right
        return left

    def unary() -> MultiPoly:
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power() -> MultiPoly:
        b = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num":
                raise ValueError("exponent must be a non-negative integer literal")
            return b ** int(val)
        return b

    def atom() -> MultiPoly:
        kind, val = take()
        if kind == "num":
            return MultiPoly.constant(int(val), base)
        if kind == "name":
            return MultiPoly.variable(val, base)
        if (kind, val) == ("op", "("):
            e = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return e
        raise ValueError(f"unexpected token {val!r}")

    result = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input at token {peek()[1]!r}")
    order = _merge_vars(base, result.vars)
    return result.with_vars(order)
