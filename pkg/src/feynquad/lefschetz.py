"""Exact arithmetic in Z[L], the subring of K_0(Var) spanned by affine cells.

An :class:`LClass` is an integer polynomial in the Lefschetz class ``L = [A^1]``.
Evaluating it at a prime power ``q`` gives the number of F_q-points of any
variety with that class, which is how every closed form in the package is
checked against point counts.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NoIntegerFit, NotDivisible

__all__ = [
    "LClass",
    "L",
    "ONE",
    "ZERO",
    "projective_class",
    "exact_div",
    "eval_at",
    "interpolate",
    "parse",
]


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class LClass:
    """Integer polynomial in L, stored as ``coefficients[i]`` = coefficient of ``L^i``.

    Instances are immutable and canonical (no trailing zero coefficients), so
    ``==`` is structural equality and instances are hashable.
    """

    __slots__ = ("_c",)

    def __init__(self, coefficients: Iterable[int] = ()):
        self._c = _strip(coefficients)

    @classmethod
    def monomial(cls, k: int, coefficient: int = 1) -> "LClass":
        if k < 0:
            raise ValueError("negative exponent")
        return cls([0] * k + [coefficient])

    @classmethod
    def const(cls, value: int) -> "LClass":
        return cls([value])

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero class."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def coefficient(self, k: int) -> int:
        return self._c[k] if 0 <= k < len(self._c) else 0

    # ring operations

    @staticmethod
    def _coerce(other) -> "LClass":
        if isinstance(other, LClass):
            return other
        if isinstance(other, int):
            return LClass([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        n = max(len(a), len(b))
        return LClass(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> "LClass":
        return LClass(-x for x in self._c)

    def __pos__(self) -> "LClass":
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return LClass(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LClass":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other) -> tuple["LClass", "LClass"]:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _divmod(self, other)

    def __floordiv__(self, other) -> "LClass":
        return exact_div(self, self._coerce(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LClass([other])
        if not isinstance(other, LClass):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(("LClass", self._c))

    def __bool__(self) -> bool:
        return bool(self._c)

    def __call__(self, q: int) -> int:
        return eval_at(self, q)

    def __repr__(self) -> str:
        return f"LClass({str(self)!r})"

    def __str__(self) -> str:
        return render(self)

    def to_json(self) -> dict:
        return {"class": render(self), "coefficients": [str(c) for c in self._c]}

    @classmethod
    def from_json(cls, obj: dict) -> "LClass":
        return cls(int(c) for c in obj["coefficients"])


ZERO = LClass()
ONE = LClass([1])
L = LClass([0, 1])


def render(a: LClass) -> str:
    """Render as ``a_k*L^k + ... + a_0`` with zero terms omitted."""
    terms = []
    for k in range(a.degree, -1, -1):
        c = a.coefficient(k)
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            power = "L" if k == 1 else f"L^{k}"
            body = power if mag == 1 else f"{mag}*{power}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms) if terms else "0"


_TERM = re.compile(r"([+-])?\s*(?:(\d+)\s*\*\s*)?(?:(L)(?:\s*\^\s*(\d+))?|(\d+))")


def parse(text: str) -> LClass:
    """Parse the textual form produced by :func:`render` (whitespace-insensitive)."""
    s = text.strip()
    if not s:
        raise ValueError("empty class literal")
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        while pos < len(s) and s[pos].isspace():
            pos += 1
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse class literal {text!r} at offset {pos}")
        sign, mult, var, exp, const = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        if var is None and mult is not None:
            raise ValueError(f"dangling '*' in {text!r}")
        value = int(mult) if mult is not None else 1
        if var is None:
            k, value = 0, int(const)
        else:
            k = int(exp) if exp is not None else 1
        if sign == "-":
            value = -value
        coeffs[k] = coeffs.get(k, 0) + value
        pos = m.end()
        first = False
    top = max(coeffs) if coeffs else -1
    return LClass(coeffs.get(i, 0) for i in range(top + 1))


def projective_class(n: int) -> LClass:
    """``[P^n] = 1 + L + ... + L^n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return LClass([1] * (n + 1))


def _divmod(a: LClass, b: LClass) -> tuple[LClass, LClass]:
    if b.is_zero():
        raise ZeroDivisionError("division by the zero class")
    rem = list(a.coefficients)
    db = b.degree
    lead = b.coefficients[-1]
    quot = [0] * max(len(rem) - db, 0)
    # integer long division; stops once the leading coefficient is not divisible
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        if c % lead:
            break
        t = c // lead
        quot[k - db] = t
        for i, y in enumerate(b.coefficients):
            rem[k - db + i] -= t * y
    return LClass(quot), LClass(rem)


def exact_div(a: LClass, b: LClass) -> LClass:
    """Return ``c`` with ``a == b * c``; raise :class:`NotDivisible` otherwise."""
    q, r = _divmod(a, b)
    if not r.is_zero():
        raise NotDivisible(r)
    return q


def eval_at(a: LClass, q: int) -> int:
    """Evaluate at an integer by Horner's rule (exact, arbitrary precision)."""
    acc = 0
    for c in reversed(a.coefficients):
        acc = acc * q + c
    return acc


def interpolate(points: Sequence[tuple[int, int]], max_degree: int) -> LClass:
    """Fit the unique integer polynomial of degree <= max_degree through ``points``.

    The first ``max_degree + 1`` points determine the candidate (Newton
    divided differences over the rationals); every remaining point must
    then agree with it.  Raises :class:`NoIntegerFit` if the candidate has
    non-integral coefficients or misses any point.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    pts = [(int(x), int(y)) for x, y in points]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    if len(pts) < max_degree + 1:
        raise ValueError(
            f"need at least {max_degree + 1} points for degree {max_degree}, got {len(pts)}"
        )
    head = pts[: max_degree + 1]
    nodes = [Fraction(x) for x, _ in head]
    table = [Fraction(y) for _, y in head]
    m = len(head)
    for level in range(1, m):
        for i in range(m - 1, level - 1, -1):
            table[i] = (table[i] - table[i - 1]) / (nodes[i] - nodes[i - level])
    # expand Newton form into the monomial basis
    poly = [Fraction(0)]
    for i in range(m - 1, -1, -1):
        shifted = [Fraction(0)] + poly
        for k in range(len(poly)):
            shifted[k] -= nodes[i] * poly[k]
        shifted[0] += table[i]
        poly = shifted
    if any(c.denominator != 1 for c in poly):
        raise NoIntegerFit(f"degree-{max_degree} fit has non-integer coefficients")
    fit = LClass(int(c) for c in poly)
    for x, y in pts[max_degree + 1 :]:
        if eval_at(fit, x) != y:
            raise NoIntegerFit(
                f"degree-{max_degree} fit predicts {eval_at(fit, x)} at {x}, data has {y}"
            )
    return fit
