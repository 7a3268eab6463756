"""Germ invariants: multiplicity, Milnor number, tangent cone and its singular locus."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator

from .fields import QQ
from .groebner import Ideal, colength, is_zero_dimensional_at_origin, radical_member
from .polynomial import Polynomial, ZeroPolynomial, initial_form, order, partials

DEFAULT_WITNESS_HEIGHT = 5
MAX_WITNESS_CANDIDATES = 250_000


class ZeroGerm(ZeroPolynomial):
    pass


class DoesNotVanishAtOrigin(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Germ:
    """A polynomial read as a function germ at the origin."""

    poly: Polynomial

    @property
    def ring(self):
        return self.poly.ring

    def __str__(self) -> str:
        return str(self.poly)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Germ):
            return self.poly == other.poly
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.poly)

    def _nonzero(self) -> None:
        if not self.poly:
            raise ZeroGerm("the zero germ has no multiplicity")

    @cached_property
    def multiplicity(self) -> int:
        self._nonzero()
        return order(self.poly)

    @cached_property
    def initial_form(self) -> Polynomial:
        self._nonzero()
        return initial_form(self.poly)

    @cached_property
    def jacobian(self) -> Ideal:
        return Ideal(partials(self.poly), ring=self.ring)

    @cached_property
    def milnor_number(self):
        if self.poly.constant_coefficient():
            raise DoesNotVanishAtOrigin(f"{self.poly} does not vanish at the origin")
        return self.jacobian.colength()

    @cached_property
    def cone_singular_ideal(self) -> Ideal:
        return Ideal(partials(self.initial_form), ring=self.ring)


def _germ(g) -> Germ:
    return g if isinstance(g, Germ) else Germ(g)


def multiplicity(g: Germ | Polynomial) -> int:
    return _germ(g).multiplicity


def milnor_number(g: Germ | Polynomial):
    """Local colength of the Jacobian ideal; ``INFINITY`` for non-isolated singularities."""
    return _germ(g).milnor_number


def cone_singular_ideal(g: Germ | Polynomial) -> Ideal:
    """Ideal of partials of the initial form; its zero set is the cone's singular locus.

    The initial form itself is omitted: by Euler's identity it lies in this
    ideal.
    """
    return _germ(g).cone_singular_ideal


def cone_has_isolated_singularity(g: Germ | Polynomial) -> bool:
    return is_zero_dimensional_at_origin(cone_singular_ideal(g))


def _spiral(n: int, height: int) -> Iterator[tuple[int, ...]]:
    """Nonzero integer points ordered by max-norm, then lexicographically."""
    for r in range(1, height + 1):
        rng = range(-r, r + 1)
        for pt in itertools.product(rng, repeat=n):
            if max(abs(c) for c in pt) == r:
                yield pt


def _small_rationals(height: int) -> list[Fraction]:
    vals = {Fraction(0)}
    for q in range(1, height + 1):
        for p in range(-height, height + 1):
            vals.add(Fraction(p, q))
    return sorted(vals, key=lambda x: (max(abs(x.numerator), x.denominator), x))


def _ones_fixed(n: int, height: int) -> Iterator[tuple[Fraction, ...]]:
    vals = _small_rationals(height)
    for i in range(n):
        for rest in itertools.product(vals, repeat=n - 1):
            yield rest[:i] + (Fraction(1),) + rest[i:]


def sigma_witness(
    g: Germ | Polynomial,
    excluded: Polynomial | None = None,
    height: int = DEFAULT_WITNESS_HEIGHT,
) -> tuple[Fraction, ...] | None:
    """A nonzero rational point of the cone's singular locus avoiding ``excluded``.

    Returns ``None`` when the bounded search finds nothing. That outcome is
    inconclusive unless the locus provably has no such point, which is
    checked first by radical membership.
    """
    germ = _germ(g)
    if germ.ring.field != QQ:
        raise ValueError("witness search needs rational coefficients")
    ideal = germ.cone_singular_ideal
    n = germ.ring.nvars
    if excluded is not None and not excluded:
        excluded = None
    if excluded is not None and radical_member(excluded, ideal):
        return None
    if cone_has_isolated_singularity(germ):
        return None
    gens = [q for q in ideal.generators if q]

    def ok(pt) -> bool:
        if any(q.evaluate(pt) for q in gens):
            return False
        return excluded is None or bool(excluded.evaluate(pt))

    count = 0
    for candidates in (_spiral(n, height), _ones_fixed(n, height)):
        for pt in candidates:
            count += 1
            if count > MAX_WITNESS_CANDIDATES:
                return None
            if ok(pt):
                return tuple(Fraction(c) for c in pt)
    return None
