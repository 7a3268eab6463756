"""Dense univariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable

from .extint import INFINITY


def _trim(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


def _primitive(coeffs) -> list[int]:
    """Integer multiple of a nonzero coefficient list with content 1."""
    den = 1
    for c in coeffs:
        d = c.denominator
        den = den * d // gcd(den, d)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
        if g == 1:
            break
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _pseudo_remainder(a: list[int], b: list[int]) -> list[int]:
    """``lc(b)^k a mod b`` over the integers, trailing zeros removed."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for j, y in enumerate(b):
            a[shift + j] -= la * y
        while a and not a[-1]:
            a.pop()
    return a


class UniPoly:
    """Polynomial ``c0 + c1*u + c2*u^2 + ...`` with exact rational coefficients.

    Coefficients are stored low degree first with trailing zeros removed, so
    the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()) -> None:
        self.coeffs = _trim([c if isinstance(c, Fraction) else Fraction(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "UniPoly":
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "UniPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def linear(cls, slope) -> "UniPoly":
        """The arc component ``slope * u``."""
        return cls([0, slope])

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
                if not mono:
                    parts.append(str(c))
                elif c == 1:
                    parts.append(mono)
                else:
                    parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([Fraction(other)])
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def order(self):
        """Index of the lowest nonzero coefficient; ``INFINITY`` for zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return INFINITY

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def _coerce(self, other) -> "UniPoly | None":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, c in enumerate(b):
            res[i] += c
        return UniPoly._raw(_trim(res))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return UniPoly._raw(())
            return UniPoly._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly._raw(())
        res = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    res[i + j] += x * y
        return UniPoly._raw(_trim(res))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result = UniPoly._raw((Fraction(1),))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv = 1 / other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                q = c * inv
                quot[i - db] = q
                for j, y in enumerate(other.coeffs):
                    rem[i - db + j] -= q * y
        return UniPoly._raw(_trim(quot)), UniPoly._raw(_trim(rem[:db]))

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def monic(self) -> "UniPoly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        inv = 1 / self.coeffs[-1]
        return UniPoly._raw(tuple(c * inv for c in self.coeffs))

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Monic greatest common divisor (zero only if both are zero).

        Runs a primitive remainder sequence on integer coefficients, which is
        much cheaper than Euclid over ``Fraction``.
        """
        if not other.coeffs:
            return self.monic()
        if not self.coeffs:
            return other.monic()
        a, b = _primitive(self.coeffs), _primitive(other.coeffs)
        if len(a) < len(b):
            a, b = b, a
        while len(b) > 1:
            r = _pseudo_remainder(a, b)
            if not r:
                break
            a, b = b, _primitive(r)
        else:
            return UniPoly._raw((Fraction(1),))
        lc = b[-1]
        return UniPoly._raw(tuple(Fraction(c, lc) for c in b))

    def derivative(self) -> "UniPoly":
        return UniPoly._raw(_trim([i * c for i, c in enumerate(self.coeffs)][1:]))

