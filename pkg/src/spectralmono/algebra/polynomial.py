"""Univariate polynomials with exact rational coefficients."""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings to a Fraction.

    Floats are rejected on purpose: every caller of this module wants
    exact values, and ``Fraction(0.1)`` is almost never what was meant.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


class Polynomial:
    """Immutable polynomial ``c0 + c1*x + ... + cd*x**d``.

    Coefficients are stored ascending and trimmed, so the zero polynomial
    has an empty coefficient tuple and ``degree == -1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def _raw(cls, cs: list[Fraction]) -> "Polynomial":
        # trusted constructor for already-Fraction lists
        while cs and not cs[-1]:
            cs.pop()
        p = cls.__new__(cls)
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls((c,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar], lead: Scalar = 1) -> "Polynomial":
        p = cls.constant(lead)
        for r in roots:
            p = p * cls((-as_fraction(r), 1))
        return p

    # ----------------------------------------------------------------- basics

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return Polynomial._raw([c / lc for c in self.coeffs])

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial.constant(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{i}")
        return " + ".join(terms)

    # ------------------------------------------------------------- arithmetic

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(other)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw([-c for c in self.coeffs])

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        if len(b) == 1:
            c = b[0]
            return Polynomial._raw([x * c for x in a])
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divrem(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Euclidean division: ``self == q*other + r`` with ``deg r < deg other``."""
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.coeffs
        dd = len(d) - 1
        lc = d[-1]
        if len(r) - 1 < dd:
            return Polynomial(), self
        q = [Fraction(0)] * (len(r) - dd)
        for i in range(len(r) - 1, dd - 1, -1):
            c = r[i]
            if not c:
                continue
            c = c / lc
            q[i - dd] = c
            for j in range(dd + 1):
                r[i - dd + j] -= c * d[j]
        return Polynomial._raw(q), Polynomial._raw(r[:dd])

    def __divmod__(self, other):
        return self.divrem(other)

    def __floordiv__(self, other) -> "Polynomial":
        return self.divrem(other)[0]

    def __mod__(self, other) -> "Polynomial":
        return self.divrem(other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = self.divrem(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    # ---------------------------------------------------------------- calculus

    def derivative(self) -> "Polynomial":
        return Polynomial._raw([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x: Scalar) -> Fraction:
        x = as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Scalar) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    def compose(self, other: "Polynomial") -> "Polynomial":
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    # ------------------------------------------------------------------- json

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str] | str) -> "Polynomial":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(Fraction(s) for s in data)


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic greatest common divisor; ``gcd(0, 0)`` is an error."""
    if not p and not q:
        raise ZeroDivisionError("gcd of two zero polynomials")
    a, b = p, q
    while b:
        a, b = b, a.divrem(b)[1]
        if b:
            b = b.monic()  # keeps coefficient sizes small
    return a.monic()


def square_free_part(p: Polynomial) -> Polynomial:
    if not p:
        raise ValueError("zero polynomial has no square-free part")
    if p.degree < 1:
        return p
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g)
