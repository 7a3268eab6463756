"""One-parameter deformations ``F(z, t) = f(z) + sum_k t^k g_k(z)``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .extint import INFINITY
from .fields import QQ, RationalFunction, RationalFunctionField
from .polynomial import Polynomial, Ring, change_ring, order
from .singularity import Germ

PARAMETER = "t"


class FamilyError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Family:
    """``f + sum_k t^k g_k`` with zero coefficients omitted.

    Every coefficient must vanish at the origin so that each member is a
    singular germ there.
    """

    f: Germ
    deformations: Mapping[int, Germ] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ring = self.f.ring
        if PARAMETER in ring.vars:
            raise FamilyError(f"{PARAMETER!r} is reserved for the deformation parameter")
        if not self.f.poly:
            raise FamilyError("the special fibre f must be nonzero")
        if self.f.poly.constant_coefficient():
            raise FamilyError(f"f = {self.f} does not vanish at the origin")
        clean = {}
        for k in sorted(self.deformations):
            g = self.deformations[k]
            if not isinstance(k, int) or k < 1:
                raise FamilyError(f"deformation index {k!r} must be an integer >= 1")
            if g.ring != ring:
                raise FamilyError(f"g[{k}] lives in {g.ring}, f in {ring}")
            if not g.poly:
                continue
            if g.poly.constant_coefficient():
                raise FamilyError(
                    f"g[{k}] = {g} does not vanish at the origin; "
                    "every member of the family must be singular at 0"
                )
            clean[k] = g
        object.__setattr__(self, "deformations", clean)

    @classmethod
    def from_polynomials(cls, f: Polynomial, gs: Mapping[int, Polynomial] | None = None) -> "Family":
        return cls(Germ(f), {k: Germ(g) for k, g in (gs or {}).items()})

    @classmethod
    def from_total(cls, F: Polynomial, parameter: str = PARAMETER) -> "Family":
        """Collect a polynomial in ``z`` and ``t`` by powers of ``t``."""
        ti = F.ring.index(parameter)
        zvars = tuple(v for v in F.ring.vars if v != parameter)
        zring = Ring(zvars, F.ring.field)
        parts: dict[int, dict] = {}
        for e, c in F.terms.items():
            parts.setdefault(e[ti], {})[e[:ti] + e[ti + 1 :]] = c
        f = Polynomial(zring, parts.pop(0, {}))
        return cls.from_polynomials(f, {k: Polynomial(zring, t) for k, t in parts.items()})

    @property
    def ring(self) -> Ring:
        return self.f.ring

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self.deformations)

    def g(self, k: int) -> Polynomial:
        got = self.deformations.get(k)
        return got.poly if got is not None else self.ring.zero()

    @property
    def m(self) -> int:
        return self.f.multiplicity

    @property
    def m1(self):
        """Least multiplicity among the deformation coefficients."""
        return min((g.multiplicity for g in self.deformations.values()), default=INFINITY)

    @cached_property
    def total_ring(self) -> Ring:
        return self.ring.extend(PARAMETER)

    @cached_property
    def total(self) -> Polynomial:
        """``F`` as a polynomial in ``z_1..z_n, t``."""
        terms = {e + (0,): c for e, c in self.f.poly.terms.items()}
        for k, g in self.deformations.items():
            for e, c in g.poly.terms.items():
                terms[e + (k,)] = c
        return Polynomial(self.total_ring, terms)

    def member(self, t0) -> Polynomial:
        """The fibre ``z -> F(z, t0)``."""
        field_ = self.ring.field
        t0 = field_(t0)
        acc = dict(self.f.poly.terms)
        for k, g in self.deformations.items():
            s = t0**k
            for e, c in g.poly.terms.items():
                v = acc.get(e)
                acc[e] = c * s if v is None else v + c * s
        return Polynomial(self.ring, acc)

    def over_parameter_field(self) -> Polynomial:
        """``F`` with ``t`` moved into the coefficients, as an element of ``QQ(t)[z]``."""
        if self.ring.field != QQ:
            raise FamilyError(
                f"generic fibre needs rational coefficients, family is over {self.ring.field.name}"
            )
        from .unipoly import UniPoly

        ring = self.ring.with_field(RationalFunctionField(PARAMETER))
        coeffs: dict[tuple, dict[int, Fraction]] = {}
        for e, c in self.f.poly.terms.items():
            coeffs.setdefault(e, {})[0] = c
        for k, g in self.deformations.items():
            for e, c in g.poly.terms.items():
                coeffs.setdefault(e, {})[k] = c
        terms = {}
        for e, by_k in coeffs.items():
            dense = [Fraction(0)] * (max(by_k) + 1)
            for k, c in by_k.items():
                dense[k] = c
            terms[e] = RationalFunction(UniPoly(dense), param=PARAMETER)
        return Polynomial(ring, terms)

    def __str__(self) -> str:
        from .parser import print_family

        return print_family(self)


@dataclass(frozen=True, eq=False)
class GreuelFamily:
    """``f + sum_j lambda_j(t) g_j`` with each ``lambda_j`` vanishing at ``t = 0``.

    The ``lambda_j`` are polynomials in the single variable ``t`` over the
    same coefficient field as ``f``.
    """

    f: Germ
    pairs: tuple[tuple[Polynomial, Germ], ...]

    def __post_init__(self) -> None:
        if not self.pairs:
            raise FamilyError("a Greuel-form family needs at least one pair")
        for j, (lam, g) in enumerate(self.pairs, 1):
            if lam.ring.vars != (PARAMETER,):
                raise FamilyError(f"lambda[{j}] must be a polynomial in {PARAMETER} alone")
            if lam.ring.field != self.f.ring.field:
                raise FamilyError(f"lambda[{j}] and f have different coefficient fields")
            if not lam:
                raise FamilyError(f"lambda[{j}] is zero")
            if lam.constant_coefficient():
                raise FamilyError(f"lambda[{j}] = {lam} does not vanish at t = 0")
            if g.ring != self.f.ring:
                raise FamilyError(f"g[{j}] lives in {g.ring}, f in {self.f.ring}")
            if not g.poly or g.poly.constant_coefficient():
                raise FamilyError(f"g[{j}] must be nonzero and vanish at the origin")

    @classmethod
    def from_polynomials(cls, f: Polynomial, pairs: Sequence[tuple[Polynomial, Polynomial]]) -> "GreuelFamily":
        return cls(Germ(f), tuple((lam, Germ(g)) for lam, g in pairs))

    @property
    def ring(self) -> Ring:
        return self.f.ring

    def nu(self, j: int) -> int:
        """Order in ``t`` of ``lambda_j`` (1-based)."""
        return order(self.pairs[j - 1][0])

    @cached_property
    def total(self) -> Polynomial:
        big = self.ring.extend(PARAMETER)
        t_index = big.nvars - 1
        acc = change_ring(self.f.poly, big)
        for lam, g in self.pairs:
            acc = acc + change_ring(lam, big, [t_index]) * change_ring(g.poly, big)
        return acc


def regroup(G: GreuelFamily) -> Family:
    """Collect ``sum_j lambda_j(t) g_j`` by powers of ``t``."""
    acc: dict[int, Polynomial] = {}
    for lam, g in G.pairs:
        for (k,), c in lam.terms.items():
            term = g.poly.scale(c)
            acc[k] = acc[k] + term if k in acc else term
    return Family.from_polynomials(G.f.poly, {k: p for k, p in acc.items() if p})
