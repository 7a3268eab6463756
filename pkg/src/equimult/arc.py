"""Polynomial arcs through the origin and exact composition with polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .fields import QQ
from .polynomial import Polynomial
from .unipoly import UniPoly

DEFAULT_DEGREE_CAP = 8


class InvalidArc(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class LimitExceeded(RuntimeError):
    """A configured degree or size cap was exceeded."""


@dataclass(frozen=True)
class Arc:
    """``u -> (z_1(u), ..., z_n(u), t(u))`` with every component vanishing at 0."""

    z: tuple[UniPoly, ...]
    t: UniPoly

    def __post_init__(self) -> None:
        comps = self.components
        for c in comps:
            if not isinstance(c, UniPoly):
                raise InvalidArc(f"arc component {c!r} is not a UniPoly")
            if c.coeffs and c.coeffs[0]:
                raise InvalidArc("arc components must vanish at u = 0")
        if not any(comps):
            raise InvalidArc("the zero arc carries no information")

    @classmethod
    def linear(cls, z0: Sequence, t0=0) -> "Arc":
        """The line ``u -> (u*z0, u*t0)``."""
        return cls(tuple(UniPoly.linear(Fraction(c)) for c in z0), UniPoly.linear(Fraction(t0)))

    @classmethod
    def monomial(cls, z0: Sequence, t0, z_exp: int, t_exp: int) -> "Arc":
        """``u -> (u^p z0, u^q t0)``; supported for experiments only."""
        return cls(
            tuple(UniPoly.monomial(z_exp, c) for c in z0), UniPoly.monomial(t_exp, t0)
        )

    @property
    def components(self) -> tuple[UniPoly, ...]:
        return self.z + (self.t,)

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.components)

    def min_component_order(self):
        return min(c.order() for c in self.components)

    def to_json(self) -> dict:
        return {
            "z": [[str(c) for c in comp.coeffs] for comp in self.z],
            "t": [str(c) for c in self.t.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Arc":
        return cls(
            tuple(UniPoly(Fraction(c) for c in comp) for comp in data["z"]),
            UniPoly(Fraction(c) for c in data["t"]),
        )


def substitute_arc(p: Polynomial, arc: Arc | Sequence[UniPoly], degree_cap: int | None = None) -> UniPoly:
    """Exact composition ``p(gamma(u))``.

    ``arc`` is an :class:`Arc` (for a polynomial in ``z`` and ``t``) or any
    sequence of components matching the ring's variables. Coefficients must
    be rational.
    """
    comps = arc.components if isinstance(arc, Arc) else tuple(arc)
    if len(comps) != p.ring.nvars:
        raise DimensionMismatch(
            f"arc has {len(comps)} components, ring {p.ring.vars} needs {p.ring.nvars}"
        )
    if degree_cap is not None and max(c.degree for c in comps) > degree_cap:
        raise LimitExceeded(f"arc degree exceeds cap {degree_cap}")
    if p.ring.field != QQ:
        raise ValueError("arc substitution needs rational coefficients")
    cache: list[dict[int, UniPoly]] = [{0: UniPoly([1]), 1: c} for c in comps]

    def power(i: int, k: int) -> UniPoly:
        table = cache[i]
        got = table.get(k)
        if got is None:
            got = power(i, k - 1) * comps[i]
            table[k] = got
        return got

    total = UniPoly(())
    for e, c in p.terms.items():
        term = UniPoly([c])
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
                if not term:
                    break
        total = total + term
    return total


def u_order(q: UniPoly):
    """Order in ``u`` at 0; ``INFINITY`` for the zero polynomial."""
    return q.order()
