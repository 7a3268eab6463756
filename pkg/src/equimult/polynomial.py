"""Sparse multivariate polynomials with dense exponent vectors."""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .extint import INFINITY
from .fields import QQ, Field, RationalFunction


class ZeroPolynomial(ValueError):
    """An operation needs a nonzero polynomial."""


class RingMismatch(ValueError):
    pass


class Ring:
    """Polynomial ring descriptor: variable names plus the coefficient field."""

    __slots__ = ("vars", "field", "_index")

    def __init__(self, vars: Sequence[str], field: Field = QQ) -> None:
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        if field.param is not None and field.param in self.vars:
            raise ValueError(f"{field.param!r} is both a variable and the field parameter")
        self.field = field
        self._index = {v: i for i, v in enumerate(self.vars)}

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def __repr__(self) -> str:
        return f"Ring({list(self.vars)}, {self.field.name})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and self.vars == other.vars and self.field == other.field

    def __hash__(self) -> int:
        return hash((self.vars, self.field))

    def index(self, name: str) -> int:
        return self._index[name]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.field(c)})

    def one(self) -> "Polynomial":
        return self.const(1)

    def gen(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self._index[name]] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.gen(v) for v in self.vars)

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): self.field(coeff)})

    def extend(self, *names: str) -> "Ring":
        return Ring(self.vars + names, self.field)

    def with_field(self, field: Field) -> "Ring":
        return Ring(self.vars, field)


def degrevlex_key(e: tuple) -> tuple:
    # ties broken by reverse lex: smaller last exponent is larger
    return (sum(e), tuple(-x for x in reversed(e)))


def neg_degrevlex_key(e: tuple) -> tuple:
    return (-sum(e), tuple(-x for x in reversed(e)))


class MonomialOrder(enum.Enum):
    """Global degrevlex (``dp``) or local negative degrevlex (``ds``)."""

    DEGREVLEX = "degrevlex"
    NEG_DEGREVLEX = "neg-degrevlex"

    @property
    def key(self):
        return degrevlex_key if self is MonomialOrder.DEGREVLEX else neg_degrevlex_key

    @property
    def is_global(self) -> bool:
        return self is MonomialOrder.DEGREVLEX


def divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


class Polynomial:
    """Immutable polynomial: a mapping from exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple, object]) -> None:
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # -- comparison and hashing -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, RationalFunction)):
            return self == self.ring.const(other) if other else not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        from .parser import print_polynomial

        return print_polynomial(self)

    # -- arithmetic -----------------------------------------------------------------

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction, RationalFunction)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        res = dict(self.terms)
        for e, c in other.terms.items():
            v = res.get(e)
            if v is None:
                res[e] = c
            else:
                v = v + c
                if v:
                    res[e] = v
                else:
                    del res[e]
        return Polynomial._raw(self.ring, res)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.ring, {e: -c for e, c in self.terms.items()})

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

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RationalFunction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        res: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = res.get(e)
                res[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(self.ring, res)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_term(self, exps: tuple, coeff) -> "Polynomial":
        return Polynomial._raw(
            self.ring,
            {tuple(a + b for a, b in zip(e, exps)): c * coeff for e, c in self.terms.items()},
        )

    # -- structure ------------------------------------------------------------------

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for zero."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading_monomial(self, order: MonomialOrder) -> tuple:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_term(self, order: MonomialOrder) -> tuple[tuple, object]:
        e = self.leading_monomial(order)
        return e, self.terms[e]

    def sorted_terms(self, order: MonomialOrder = MonomialOrder.DEGREVLEX) -> list:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, max_degree: int) -> "Polynomial":
        """Drop every term of total degree above ``max_degree``."""
        return Polynomial._raw(
            self.ring, {e: c for e, c in self.terms.items() if sum(e) <= max_degree}
        )

    def derivative(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.ring.index(name_or_index)
        res = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                res[e[:i] + (k - 1,) + e[i + 1 :]] = c * k
        return Polynomial._raw(self.ring, res)

    def evaluate(self, point: Sequence):
        """Value at a point (a sequence with one entry per variable)."""
        if len(point) != self.ring.nvars:
            raise ValueError("point has the wrong number of coordinates")
        total = self.ring.field.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total = total + v
        return total

    def subs(self, values: Mapping[str, object]) -> "Polynomial":
        """Substitute field elements for some variables, keeping the ring."""
        idx = {self.ring.index(k): v for k, v in values.items()}
        res: dict = {}
        for e, c in self.terms.items():
            v = c
            ne = list(e)
            for i, x in idx.items():
                if e[i]:
                    v = v * x ** e[i]
                ne[i] = 0
            ne = tuple(ne)
            res[ne] = res[ne] + v if ne in res else v
        return Polynomial(self.ring, res)

    def map_coefficients(self, fn, ring: Ring | None = None) -> "Polynomial":
        ring = self.ring if ring is None else ring
        return Polynomial(ring, {e: fn(c) for e, c in self.terms.items()})

    def primitive(self) -> "Polynomial":
        """Scale a rational polynomial to coprime integer coefficients, positive lead."""
        if not self.terms or self.ring.field.param is not None:
            return self
        from math import gcd, lcm

        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, (c * den).numerator)
        lead = self.leading_monomial(MonomialOrder.DEGREVLEX)
        s = Fraction(den, num)
        if self.terms[lead] < 0:
            s = -s
        return self.scale(s)


def order(p: Polynomial):
    """Multiplicity at the origin: least total degree of a term.

    ``INFINITY`` for the zero polynomial.
    """
    if not p.terms:
        return INFINITY
    return min(sum(e) for e in p.terms)


def initial_form(p: Polynomial) -> Polynomial:
    """Sum of the terms of least total degree."""
    if not p.terms:
        raise ZeroPolynomial("initial form of the zero polynomial")
    return p.homogeneous_part(order(p))


def partials(p: Polynomial, names: Iterable[str] | None = None) -> tuple[Polynomial, ...]:
    """Gradient with respect to ``names`` (default: every ring variable)."""
    names = p.ring.vars if names is None else tuple(names)
    return tuple(p.derivative(v) for v in names)


def change_ring(p: Polynomial, ring: Ring, var_map: Sequence[int] | None = None) -> Polynomial:
    """Re-embed ``p`` into ``ring``.

    ``var_map[i]`` is the target index of source variable ``i``; by default
    variables are matched by name. Coefficients are converted by the target
    field.
    """
    if var_map is None:
        var_map = [ring.index(v) for v in p.ring.vars]
    n = ring.nvars
    res = {}
    for e, c in p.terms.items():
        ne = [0] * n
        for i, k in enumerate(e):
            if k:
                ne[var_map[i]] += k
        res[tuple(ne)] = ring.field(c)
    return Polynomial(ring, res)
