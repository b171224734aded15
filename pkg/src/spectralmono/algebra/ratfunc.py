"""Rational functions over Q in a single variable, kept in canonical form."""

from __future__ import annotations

from fractions import Fraction

from ..errors import SpectralMonoError
from .polynomial import Polynomial, Scalar, as_fraction, poly_gcd


class PoleError(SpectralMonoError, ZeroDivisionError):
    """Evaluation at a root of the denominator."""


class RationalFunction:
    """``num/den`` with ``gcd(num, den) == 1`` and ``den`` monic.

    Canonical form makes ``==`` structural equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = num if isinstance(num, Polynomial) else Polynomial.constant(num)
        if den is None:
            den = Polynomial.constant(1)
        elif not isinstance(den, Polynomial):
            den = Polynomial.constant(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if not num:
                den = Polynomial.constant(1)
            elif den.degree > 0:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            lc = den.lc
            if lc != 1:
                num = num * (1 / lc)
                den = den * (1 / lc)
        self.num = num
        self.den = den

    @classmethod
    def variable(cls) -> "RationalFunction":
        return cls(Polynomial.x(), _reduced=True)

    @classmethod
    def constant(cls, c: Scalar) -> "RationalFunction":
        return cls(Polynomial.constant(c), _reduced=True)

    @staticmethod
    def _coerce(other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other, _reduced=True)
        return RationalFunction(Polynomial.constant(as_fraction(other)), _reduced=True)

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction(({self.num}) / ({self.den}))"

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __add__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalFunction":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if not self.num or not other.num:
            return RationalFunction(Polynomial(), _reduced=True)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other) -> "RationalFunction":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        return self._coerce(other) * self.inverse()

    def __call__(self, q: Scalar) -> Fraction:
        return self.eval(q)

    def eval(self, q: Scalar) -> Fraction:
        q = as_fraction(q)
        d = self.den(q)
        if not d:
            raise PoleError(f"pole at {q}")
        return self.num(q) / d

    def sign_at(self, q: Scalar) -> int:
        v = self.eval(q)
        return (v > 0) - (v < 0)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}
