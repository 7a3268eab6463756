"""Coefficient fields: the rationals and rational functions in one parameter.

Rationals are :class:`fractions.Fraction`. Elements of ``QQ(t)`` (or
``QQ(a)``) are :class:`RationalFunction` values with coprime numerator and
monic denominator. Both support the ordinary arithmetic operators, so the
polynomial and basis code is written once against the operator protocol.
"""

from __future__ import annotations

from fractions import Fraction

from .unipoly import UniPoly

_ONE = UniPoly._raw((Fraction(1),))


def _format_unipoly(p: UniPoly, name: str) -> str:
    if not p.coeffs:
        return "0"
    out = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


class RationalFunction:
    """Element of ``QQ(param)`` stored as a reduced fraction of polynomials."""

    __slots__ = ("num", "den", "param", "_hash")

    def __init__(self, num: UniPoly, den: UniPoly = _ONE, param: str = "t") -> None:
        if not den.coeffs:
            raise ZeroDivisionError("rational function with zero denominator")
        if den.degree > 0 and num.coeffs:
            g = num.gcd(den)
            if g.degree > 0:
                num = num // g
                den = den // g
        lc = den.coeffs[-1]
        if lc != 1:
            inv = 1 / lc
            num = num * inv
            den = den * inv
        if not num.coeffs:
            den = _ONE
        self.num = num
        self.den = den
        self.param = param
        self._hash = None

    @classmethod
    def _raw(cls, num: UniPoly, den: UniPoly, param: str) -> "RationalFunction":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj.param = param
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c, param: str = "t") -> "RationalFunction":
        return cls._raw(UniPoly([c]), _ONE, param)

    @classmethod
    def generator(cls, param: str = "t") -> "RationalFunction":
        return cls._raw(UniPoly([0, 1]), _ONE, param)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.param != self.param:
                raise ValueError(f"cannot mix QQ({self.param}) and QQ({other.param})")
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction._raw(UniPoly([other]), _ONE, self.param)
        return None

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.num.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.den.degree == 0 and self.num == other
        if isinstance(other, RationalFunction):
            return self.param == other.param and self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.den.degree == 0 and self.num.degree <= 0:
                self._hash = hash(self.num.coeffs[0] if self.num.coeffs else Fraction(0))
            else:
                self._hash = hash((self.param, self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"RationalFunction({self})"

    def __str__(self) -> str:
        n = _format_unipoly(self.num, self.param)
        if self.den.degree == 0:
            return n
        return f"({n})/({_format_unipoly(self.den, self.param)})"

    def __neg__(self) -> "RationalFunction":
        return RationalFunction._raw(-self.num, self.den, self.param)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den.degree == 0 and other.den.degree == 0:
            return RationalFunction._raw(self.num + other.num, _ONE, self.param)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den, self.param)
        # a/b + c/d with gcd(b, d) = 1 is already reduced
        if other.den.degree == 0:
            return self._coprime_sum(self.num + other.num * self.den, self.den)
        if self.den.degree == 0:
            return self._coprime_sum(self.num * other.den + other.num, other.den)
        # otherwise only g = gcd(b, d) can share factors with the new numerator
        g = self.den.gcd(other.den)
        if g.degree == 0:
            return self._coprime_sum(self.num * other.den + other.num * self.den, self.den * other.den)
        b, d = self.den // g, other.den // g
        num = self.num * d + other.num * b
        return RationalFunction(num, self.den * d, self.param)

    __radd__ = __add__

    def _coprime_sum(self, num: UniPoly, den: UniPoly) -> "RationalFunction":
        return RationalFunction._raw(num, den if num.coeffs else _ONE, self.param)

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
                return RationalFunction._raw(UniPoly._raw(()), _ONE, self.param)
            return RationalFunction._raw(self.num * Fraction(other), self.den, self.param)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den.degree == 0 and other.den.degree == 0:
            return RationalFunction._raw(self.num * other.num, _ONE, self.param)
        # cross-cancel before multiplying keeps degrees small
        g1 = self.num.gcd(other.den) if self.num and other.den.degree > 0 else _ONE
        g2 = other.num.gcd(self.den) if other.num and self.den.degree > 0 else _ONE
        num = (self.num // g1) * (other.num // g2)
        den = (self.den // g2) * (other.den // g1)
        if den.coeffs and den.coeffs[-1] != 1:
            inv = 1 / den.coeffs[-1]
            num, den = num * inv, den * inv
        return RationalFunction._raw(num, den if num.coeffs else _ONE, self.param)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num.coeffs:
            raise ZeroDivisionError("inverse of zero")
        lc = self.num.coeffs[-1]
        inv = 1 / lc
        return RationalFunction._raw(self.den * inv, self.num * inv, self.param)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return RationalFunction._raw(self.num * (1 / Fraction(other)), self.den, self.param)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction._raw(self.num ** n, self.den ** n, self.param)

    def evaluate(self, value) -> Fraction:
        """Specialize the parameter; raises ``ZeroDivisionError`` at a pole."""
        d = self.den(value)
        if not d:
            raise ZeroDivisionError(f"{self} has a pole at {self.param} = {value}")
        return self.num(value) / d


class Field:
    """Descriptor of a coefficient field.

    ``param`` is ``None`` for the rationals, otherwise the name of the
    transcendental parameter.
    """

    __slots__ = ("param",)

    def __init__(self, param: str | None = None) -> None:
        self.param = param

    @property
    def name(self) -> str:
        return "QQ" if self.param is None else f"QQ({self.param})"

    def __repr__(self) -> str:
        return self.name

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.param == self.param

    def __hash__(self) -> int:
        return hash(("Field", self.param))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        if self.param is None:
            if isinstance(value, RationalFunction):
                return value.constant_value()
            return Fraction(value)
        if isinstance(value, RationalFunction):
            if value.param != self.param:
                raise ValueError(f"element of QQ({value.param}) is not in {self.name}")
            return value
        return RationalFunction.constant(value, self.param)

    def gen(self) -> RationalFunction:
        if self.param is None:
            raise ValueError("QQ has no parameter")
        return RationalFunction.generator(self.param)

    def format(self, c) -> str:
        return str(c)


QQ = Field()


def RationalFunctionField(param: str = "t") -> Field:
    return Field(param)


def specialize(c, value) -> Fraction:
    """Image of a coefficient under ``param -> value``; rationals pass through."""
    if isinstance(c, RationalFunction):
        return c.evaluate(value)
    return Fraction(c)
