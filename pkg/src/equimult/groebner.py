"""Gröbner bases (Buchberger, degrevlex) and standard bases (Mora, local ds).

The kernels work on raw ``{exponent tuple: coefficient}`` dicts; the public
functions accept and return :class:`Polynomial` values.
"""

from __future__ import annotations

import logging
from collections import deque
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .extint import INFINITY
from .unipoly import UniPoly
from .polynomial import MonomialOrder, Polynomial, Ring, RingMismatch, divides

log = logging.getLogger(__name__)

GLOBAL = MonomialOrder.DEGREVLEX
_ONE_T = UniPoly._raw((Fraction(1),))
LOCAL = MonomialOrder.NEG_DEGREVLEX


class NonHomogeneousInput(ValueError):
    pass


# -- raw dict helpers -------------------------------------------------------------


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _sub_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _axpy(h: dict, coeff, shift: tuple, g: dict) -> None:
    """In place: ``h -= coeff * x^shift * g``."""
    for e, c in g.items():
        ne = tuple(x + y for x, y in zip(e, shift))
        v = h.get(ne)
        if v is None:
            h[ne] = -(coeff * c)
        else:
            v = v - coeff * c
            if v:
                h[ne] = v
            else:
                del h[ne]


def _monic(p: dict, lm: tuple) -> dict:
    lc = p[lm]
    if lc == 1:
        return p
    inv = 1 / lc
    return {e: c * inv for e, c in p.items()}


def _primitive(p: dict, lm: tuple) -> dict:
    """Scalar multiple of ``p`` over ``QQ(t)`` with coefficients in ``QQ[t]`` and content 1.

    Keeping coefficients polynomial lets reductions run fraction-free, so
    no gcd is taken per coefficient operation.
    """
    coeffs = list(p.values())
    den = None
    for c in coeffs:
        if c.den.degree > 0:
            den = c.den if den is None else den * (c.den // den.gcd(c.den))
    nums = [c.num if den is None else c.num * (den // c.den) for c in coeffs]
    g = None
    for q in nums:
        g = q if g is None else g.gcd(q)
        if g.degree == 0:
            break
    if g is not None and g.degree > 0:
        nums = [q // g for q in nums]
    lead = nums[list(p).index(lm)] if len(p) > 1 else nums[0]
    inv = 1 / lead.coeffs[-1]
    param = coeffs[0].param
    make = type(coeffs[0])._raw
    return {e: make(q * inv, _ONE_T, param) for e, q in zip(p, nums)}


def _normalize(p: dict, lm: tuple) -> dict:
    """Monic over QQ, primitive over QQ(t)."""
    lc = p[lm]
    if isinstance(lc, Fraction):
        return _monic(p, lm)
    return _primitive(p, lm)


def _reduce_by(h: dict, lm: tuple, g: "_Elem") -> dict:
    """Cancel the term of ``h`` at ``lm`` against ``g``, up to a unit factor.

    Over ``QQ(t)`` the step is fraction-free: ``h`` is scaled by ``lc(g)``
    instead of dividing by it, which multiplies ``h`` by a unit.
    """
    a = g.poly[g.lm]
    c = h[lm]
    shift = _sub_exp(lm, g.lm)
    if isinstance(a, Fraction) or a == 1:
        _axpy(h, c / a if a != 1 else c, shift, g.poly)
        return h
    h = {e: v * a for e, v in h.items()}
    _axpy(h, c, shift, g.poly)
    return h


class _Elem:
    """Basis element with cached leading data."""

    __slots__ = ("poly", "lm", "deg", "ecart")

    def __init__(self, poly: dict, key) -> None:
        lm = max(poly, key=key)
        poly = _normalize(poly, lm)
        self.poly = poly
        self.lm = lm
        self.deg = max(sum(e) for e in poly)
        self.ecart = self.deg - sum(lm)


def _spoly(f: _Elem, g: _Elem) -> dict:
    lcm = _lcm(f.lm, g.lm)
    h: dict = {}
    sf = _sub_exp(lcm, f.lm)
    cf, cg = f.poly[f.lm], g.poly[g.lm]
    scale = None if cf == cg else cg
    for e, c in f.poly.items():
        h[tuple(x + y for x, y in zip(e, sf))] = c if scale is None else c * scale
    _axpy(h, 1 if scale is None else cf, _sub_exp(lcm, g.lm), g.poly)
    return h


# -- Buchberger -------------------------------------------------------------------


def _full_reduce(h: dict, basis: Sequence[_Elem], key) -> dict:
    """Complete reduction of ``h`` by ``basis`` for a global order."""
    rem: dict = {}
    h = dict(h)
    while h:
        lm = max(h, key=key)
        for g in basis:
            if divides(g.lm, lm):
                a = g.poly[g.lm]
                _axpy(h, h[lm] if a == 1 else h[lm] / a, _sub_exp(lm, g.lm), g.poly)
                break
        else:
            rem[lm] = h.pop(lm)
    return rem


def _update(basis: list[_Elem], pairs: set, new_index: int) -> set:
    """Gebauer-Möller installation of the pairs created by ``basis[new_index]``."""
    f = basis[new_index]
    lmf = f.lm
    kept = set()
    for i, j in pairs:
        lij = _lcm(basis[i].lm, basis[j].lm)
        if (
            divides(lmf, lij)
            and lij != _lcm(basis[i].lm, lmf)
            and lij != _lcm(basis[j].lm, lmf)
        ):
            continue
        kept.add((i, j))
    by_lcm: dict[tuple, list[int]] = {}
    for i in range(new_index):
        if basis[i] is None:
            continue
        by_lcm.setdefault(_lcm(basis[i].lm, lmf), []).append(i)
    minimal: list[tuple] = []
    for lcm in sorted(by_lcm, key=sum):
        if not any(divides(m, lcm) for m in minimal):
            minimal.append(lcm)
    for lcm in minimal:
        idx = by_lcm[lcm]
        if any(_coprime(basis[i].lm, lmf) for i in idx):
            continue
        kept.add((min(idx), new_index))
    return kept


def _buchberger(gens: Iterable[dict], key) -> list[_Elem]:
    basis: list = []
    pairs: set = set()
    for g in gens:
        if not g:
            continue
        red = _full_reduce(g, [b for b in basis if b is not None], key)
        if not red:
            continue
        basis.append(_Elem(red, key))
        pairs = _update(basis, pairs, len(basis) - 1)
    while pairs:
        # normal strategy: least lcm by degree, ties by the order itself
        pair = min(
            pairs,
            key=lambda p: (key(_lcm(basis[p[0]].lm, basis[p[1]].lm)), p),
        )
        pairs.discard(pair)
        i, j = pair
        h = _full_reduce(_spoly(basis[i], basis[j]), [b for b in basis if b is not None], key)
        if h:
            basis.append(_Elem(h, key))
            pairs = _update(basis, pairs, len(basis) - 1)
    return [b for b in basis if b is not None]


def _reduced(basis: list[_Elem], key) -> list[dict]:
    basis = sorted(basis, key=lambda b: key(b.lm))
    minimal: list[_Elem] = []
    for b in basis:
        if not any(divides(m.lm, b.lm) for m in minimal):
            minimal.append(b)
    out = []
    for i, b in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        tail = dict(b.poly)
        lc = tail.pop(b.lm)
        red = _full_reduce(tail, others, key)
        red[b.lm] = lc
        out.append(_normalize(red, b.lm))
    out.sort(key=lambda p: key(max(p, key=key)), reverse=True)
    return out


def groebner_basis(
    gens: "Ideal | Sequence[Polynomial]", order: MonomialOrder = MonomialOrder.DEGREVLEX
) -> tuple[Polynomial, ...]:
    """Reduced Gröbner basis for a global order, sorted by descending leading monomial."""
    if isinstance(gens, Ideal):
        return gens.groebner_basis(order)
    return Ideal(gens).groebner_basis(order)


# -- Mora -------------------------------------------------------------------------

DEFAULT_MORA_BUDGET = 20_000
DEFAULT_MAX_CORNER_DEGREE = 48
# rounds modulo m^D tried before plain Mora
EARLY_CORNER_DEGREE = 12
# Coefficient height (bits) at which the untruncated run is abandoned.
MAX_COEFFICIENT_BITS = 2048


class BasisLimitExceeded(RuntimeError):
    """No certified local standard basis within the configured degree cap."""


class _BudgetExceeded(Exception):
    pass


class _NotIsolated(BasisLimitExceeded):
    """The origin lies on a positive-dimensional component of V(I).

    Only ``colength`` can answer (with INFINITY); a local basis is not
    produced for such ideals once plain Mora has run out of budget.
    """


def _vanishing_line(gens: Sequence[dict], nvars: int, height: int = 2) -> tuple | None:
    """A direction ``d`` of small height with every generator zero on ``u*d``.

    Sound but incomplete test for the origin not being isolated in V(gens):
    the zero set then contains a whole line through the origin.
    """
    for d in product(range(-height, height + 1), repeat=nvars):
        # one representative per line: first nonzero coordinate positive
        first = next((x for x in d if x), 0)
        if first <= 0:
            continue
        for g in gens:
            by_degree: dict[int, object] = {}
            for e, c in g.items():
                v = c
                for x, k in zip(d, e):
                    if k:
                        v = v * x**k
                deg = sum(e)
                by_degree[deg] = by_degree.get(deg, 0) + v
            if any(by_degree.values()):
                break
        else:
            return d
    return None


class _MoraState:
    """Reduction step counter and truncation degree for one Mora run.

    Every monomial of degree ``>= cap`` is known to lie in the local ideal,
    so such terms are dropped.
    """

    __slots__ = ("cap", "steps", "budget")

    def __init__(self, cap: int | None = None, budget: int | None = None) -> None:
        self.cap = cap
        self.steps = 0
        self.budget = budget


def _ecart_of(h: dict, lm: tuple) -> int:
    return max(sum(e) for e in h) - sum(lm)


def _coefficient_bits(c) -> int:
    if isinstance(c, Fraction):
        return max(c.numerator.bit_length(), c.denominator.bit_length())
    # rational functions: total size of numerator and denominator
    return sum(_coefficient_bits(a) for p in (c.num, c.den) for a in p.coeffs)


def _height(h: dict) -> int:
    return max((_coefficient_bits(c) for c in h.values()), default=0)


def _truncate(h: dict, cap: int | None) -> dict:
    if cap is None:
        return h
    return {e: c for e, c in h.items() if sum(e) < cap}


def _mora_nf(h: dict, basis: Sequence[_Elem], key, state: _MoraState | None = None) -> dict:
    """Mora's weak normal form with écart-driven reducer choice.

    Reducers come from the basis and from earlier intermediate results that
    were recorded when a reducer of larger écart had to be used.
    """
    cap = state.cap if state is not None else None
    h = _truncate(dict(h), cap)
    if not h:
        return h
    fraction_free = not isinstance(next(iter(h.values())), Fraction)
    if fraction_free:
        h = _primitive(h, max(h, key=key))
    extra: list[_Elem] = []
    while h:
        lm = max(h, key=key)
        best = None
        for g in basis:
            if divides(g.lm, lm) and (best is None or g.ecart < best.ecart):
                best = g
                if g.ecart == 0:
                    break
        if best is None or best.ecart:
            for g in extra:
                if divides(g.lm, lm) and (best is None or g.ecart < best.ecart):
                    best = g
        if best is None:
            return h
        if state is not None:
            state.steps += 1
            if state.budget is not None and (
                state.steps > state.budget
                or _height(h) > MAX_COEFFICIENT_BITS
            ):
                raise _BudgetExceeded
        if best.ecart > _ecart_of(h, lm):
            extra.append(_Elem(dict(h), key))
        h = _reduce_by(h, lm, best)
        if fraction_free and len(h) > 1:
            h = _primitive(h, max(h, key=key))
        if cap is not None:
            for e in [e for e in h if sum(e) >= cap]:
                del h[e]
    return h


def _corner_cap(leading: Iterable[tuple], nvars: int) -> int | None:
    """A truncation degree licensed by a monomial ideal of finite colength.

    Every monomial of degree above the top standard monomial lies in the
    ideal; one more degree is kept so minimal generators survive truncation.
    ``None`` for infinite colength.
    """
    lead = minimal_monomials(leading)
    if any(not any(m) for m in lead):
        return 1
    for i in range(nvars):
        if not any(m[i] and sum(m) == m[i] for m in lead):
            return None
    top = max(sum(e) for e in standard_monomials(lead, nvars))
    return top + 2


def _mora(gens: Sequence[dict], key, state: _MoraState) -> list[_Elem]:
    """Mora's tangent-cone algorithm with highest-corner truncation.

    As soon as the leading monomials found so far have finite colength,
    terms beyond the corner are discarded from the basis and all later
    reductions.
    """
    basis: list[_Elem] = []
    pairs: list[tuple[_Elem, _Elem]] = []

    def install(h: dict) -> None:
        e = _Elem(h, key)
        pairs.extend((b, e) for b in basis)
        basis.append(e)
        cap = _corner_cap((b.lm for b in basis), len(e.lm))
        if cap is not None and (state.cap is None or cap < state.cap):
            state.cap = cap
            dropped = set()
            for b in basis:
                t = _truncate(b.poly, cap)
                if not t:
                    # lm beyond the corner: already covered by the others
                    dropped.add(id(b))
                elif len(t) != len(b.poly):
                    b.poly = t
                    b.deg = max(sum(x) for x in t)
                    b.ecart = b.deg - sum(b.lm)
            if dropped:
                basis[:] = [b for b in basis if id(b) not in dropped]
                pairs[:] = [
                    (f, g) for f, g in pairs if id(f) not in dropped and id(g) not in dropped
                ]

    for g in gens:
        h = _mora_nf(g, basis, key, state)
        if h:
            install(h)

    def sugar(pair: tuple[_Elem, _Elem]) -> int:
        f, g = pair
        return sum(_lcm(f.lm, g.lm)) + max(f.ecart, g.ecart)

    while pairs:
        idx = min(range(len(pairs)), key=lambda k: sugar(pairs[k]))
        f, g = pairs.pop(idx)
        if _coprime(f.lm, g.lm):
            continue
        h = _mora_nf(_spoly(f, g), basis, key, state)
        if h:
            install(h)
    return basis


def _truncated_round(gens: list[dict], key, degree: int, nvars: int):
    """Mora modulo ``m^degree``; the basis if the round certifies itself, else ``None``."""
    state = _MoraState(cap=degree)
    basis = _mora(gens, key, state)
    cap = _corner_cap((b.lm for b in basis), nvars)
    if cap is not None and cap <= degree:
        return basis, state.cap
    log.debug("truncation degree %d not certified", degree)
    return None


def _local_basis(
    gens: list[dict], key, budget: int | None, max_degree: int, bound: int | None = None
) -> tuple[list[_Elem], int | None]:
    """Standard basis for the local order together with its truncation degree.

    A few cheap rounds modulo ``m^D`` come first. A round is accepted when
    every monomial of degree ``D - 1`` is a leading monomial: then
    ``m^(D-1)`` lies in ``I + m^D``, Nakayama's lemma puts it inside the
    local ideal, and the truncated basis is a standard basis of ``I``.
    Failing that, plain Mora runs under a work budget. If that is exhausted
    and the zero set visibly contains a line through the origin,
    ``_NotIsolated`` is raised (there is no highest corner to truncate at).
    Otherwise the rounds resume with larger ``D``.

    A known upper bound ``b`` on the colength replaces all of this: ``m^b``
    then lies in the ideal, so the round at ``D = b + 1`` must certify.
    """
    gens = [g for g in gens if g]
    if not gens:
        return [], None
    nvars = len(next(iter(gens[0])))
    degree = max(4, max(min(sum(e) for e in g) for g in gens) + 2)
    if bound is not None:
        last = max(bound + 1, degree)
        while True:
            got = _truncated_round(gens, key, min(degree, last), nvars)
            if got is not None:
                return got
            if degree >= last:
                raise BasisLimitExceeded(f"colength exceeds the stated bound {bound}")
            degree = degree * 3 // 2 + 1
    while degree <= min(EARLY_CORNER_DEGREE, max_degree):
        got = _truncated_round(gens, key, degree, nvars)
        if got is not None:
            return got
        degree = degree * 3 // 2 + 1
    state = _MoraState(budget=budget)
    try:
        return _mora(gens, key, state), state.cap
    except _BudgetExceeded:
        log.debug("Mora budget of %s steps exhausted; switching to truncated rounds", budget)
    line = _vanishing_line(gens, nvars)
    if line is not None:
        raise _NotIsolated(f"the zero set contains the line through {line}")
    while degree <= max_degree:
        got = _truncated_round(gens, key, degree, nvars)
        if got is not None:
            return got
        degree = degree * 3 // 2 + 1
    raise BasisLimitExceeded(
        f"no certified local standard basis with truncation degree <= {max_degree}"
    )


def standard_basis(gens: "Ideal | Sequence[Polynomial]") -> tuple[Polynomial, ...]:
    """Standard basis for the local negative-degrevlex order (Mora's algorithm)."""
    if isinstance(gens, Ideal):
        return gens.standard_basis()
    return Ideal(gens).standard_basis()


# -- leading ideals and colength -----------------------------------------------------


def minimal_monomials(monos: Iterable[tuple]) -> list[tuple]:
    monos = sorted(set(monos), key=sum)
    out: list[tuple] = []
    for m in monos:
        if not any(divides(o, m) for o in out):
            out.append(m)
    return out


def standard_monomials(leading: Sequence[tuple], nvars: int) -> list[tuple]:
    """Monomials outside a monomial ideal of finite colength (breadth-first)."""
    leading = minimal_monomials(leading)
    if any(not any(m) for m in leading):
        return []
    start = (0,) * nvars
    seen = {start}
    queue = deque([start])
    while queue:
        e = queue.popleft()
        for i in range(nvars):
            ne = e[:i] + (e[i] + 1,) + e[i + 1 :]
            if ne in seen or any(divides(m, ne) for m in leading):
                continue
            seen.add(ne)
            queue.append(ne)
    return list(seen)


def count_standard_monomials(leading: Sequence[tuple], nvars: int):
    """Number of monomials outside the monomial ideal generated by ``leading``.

    ``INFINITY`` when some variable has no pure power among the generators.
    """
    leading = minimal_monomials(leading)
    if any(not any(m) for m in leading):
        return 0
    for i in range(nvars):
        if not any(m[i] and sum(m) == m[i] for m in leading):
            return INFINITY
    return len(standard_monomials(leading, nvars))


# -- the Ideal type ----------------------------------------------------------------


class Ideal:
    """Ideal given by generators; bases are computed once per order and cached."""

    def __init__(self, generators: Iterable[Polynomial], ring: Ring | None = None) -> None:
        gens = tuple(generators)
        if ring is None:
            if not gens:
                raise ValueError("an empty generator list needs an explicit ring")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatch(f"generator in {g.ring}, ideal in {ring}")
        self.ring = ring
        self.generators = gens
        self._bases: dict[MonomialOrder, tuple[Polynomial, ...]] = {}
        self._elems: dict[MonomialOrder, list[_Elem]] = {}
        self._local_cap: int | None = None
        self.mora_budget = DEFAULT_MORA_BUDGET
        self.max_corner_degree = DEFAULT_MAX_CORNER_DEGREE
        # a known upper bound on the local colength, if any
        self.colength_bound: int | None = None

    def __repr__(self) -> str:
        return f"Ideal({', '.join(str(g) for g in self.generators)})"

    def _basis_elems(self, order: MonomialOrder) -> list[_Elem]:
        got = self._elems.get(order)
        if got is None:
            key = order.key
            raw = [dict(g.terms) for g in self.generators if g]
            if order.is_global:
                got = [_Elem(p, key) for p in _reduced(_buchberger(raw, key), key)]
            else:
                elems, self._local_cap = _local_basis(
                    raw, key, self.mora_budget, self.max_corner_degree, self.colength_bound
                )
                got = sorted(elems, key=lambda b: key(b.lm), reverse=True)
            self._elems[order] = got
            self._bases[order] = tuple(Polynomial._raw(self.ring, e.poly) for e in got)
            log.debug("basis for %s (%s): %d elements", self, order.value, len(got))
        return got

    def groebner_basis(self, order: MonomialOrder = MonomialOrder.DEGREVLEX) -> tuple[Polynomial, ...]:
        if not order.is_global:
            raise ValueError("groebner_basis needs a global order; use standard_basis")
        self._basis_elems(order)
        return self._bases[order]

    def standard_basis(self) -> tuple[Polynomial, ...]:
        self._basis_elems(LOCAL)
        return self._bases[LOCAL]

    def basis(self, order: MonomialOrder) -> tuple[Polynomial, ...]:
        self._basis_elems(order)
        return self._bases[order]

    def leading_monomials(self, order: MonomialOrder = LOCAL) -> list[tuple]:
        return minimal_monomials(e.lm for e in self._basis_elems(order))

    def normal_form(self, p: Polynomial, order: MonomialOrder = MonomialOrder.DEGREVLEX) -> Polynomial:
        """Remainder of ``p`` modulo the basis.

        Global orders give the unique fully reduced remainder. The local order
        gives Mora's weak normal form, which is zero exactly when ``p`` lies in
        the ideal of the local ring.
        """
        if p.ring != self.ring:
            raise RingMismatch(f"{p.ring} vs {self.ring}")
        elems = self._basis_elems(order)
        if order.is_global:
            if not elems:
                return p
            rem = _full_reduce(dict(p.terms), elems, order.key)
        else:
            rem = _mora_nf(dict(p.terms), elems, order.key, _MoraState(cap=self._local_cap))
        return Polynomial._raw(self.ring, rem)

    def contains(self, p: Polynomial, order: MonomialOrder = MonomialOrder.DEGREVLEX) -> bool:
        return not self.normal_form(p, order)

    def colength(self, order: MonomialOrder = LOCAL):
        """Number of standard monomials; local order by default."""
        try:
            lead = self.leading_monomials(order)
        except _NotIsolated:
            return INFINITY
        if not lead:
            return INFINITY
        return count_standard_monomials(lead, self.ring.nvars)

    def is_unit_ideal(self, order: MonomialOrder = MonomialOrder.DEGREVLEX) -> bool:
        return any(not any(m) for m in self.leading_monomials(order))


def normal_form(p: Polynomial, ideal: Ideal, order: MonomialOrder = MonomialOrder.DEGREVLEX) -> Polynomial:
    return ideal.normal_form(p, order)


def colength(ideal: Ideal | Sequence[Polynomial]):
    """Local colength at the origin (``INFINITY`` if not zero-dimensional there)."""
    if not isinstance(ideal, Ideal):
        ideal = Ideal(ideal)
    return ideal.colength(LOCAL)


def radical_member(p: Polynomial, ideal: Ideal | Sequence[Polynomial]) -> bool:
    """Whether ``p`` lies in the radical of the ideal (Rabinowitsch trick)."""
    if not isinstance(ideal, Ideal):
        ideal = Ideal(list(ideal), ring=p.ring)
    if p.ring != ideal.ring:
        raise RingMismatch(f"{p.ring} vs {ideal.ring}")
    if not p:
        return True
    ring = ideal.ring
    aux = "_w"
    while aux in ring.vars or aux == ring.field.param:
        aux += "_"
    big = ring.extend(aux)
    n = ring.nvars

    def lift(q: Polynomial) -> Polynomial:
        return Polynomial._raw(big, {e + (0,): c for e, c in q.terms.items()})

    w = big.gen(aux)
    gens = [lift(g) for g in ideal.generators] + [big.one() - w * lift(p)]
    return Ideal(gens, ring=big).is_unit_ideal()


def is_zero_dimensional_at_origin(ideal: Ideal | Sequence[Polynomial]) -> bool:
    """For a homogeneous ideal: whether its zero set is the origin alone."""
    if not isinstance(ideal, Ideal):
        ideal = Ideal(ideal)
    for g in ideal.generators:
        if not g.is_homogeneous():
            raise NonHomogeneousInput(f"generator {g} is not homogeneous")
    lead = ideal.leading_monomials(MonomialOrder.DEGREVLEX)
    if any(not any(m) for m in lead):
        return True
    n = ideal.ring.nvars
    return all(any(m[i] and sum(m) == m[i] for m in lead) for i in range(n))
