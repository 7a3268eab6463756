import random
from fractions import Fraction
from itertools import product

import pytest

from equimult.extint import INFINITY
from equimult.groebner import (
    GLOBAL,
    LOCAL,
    BasisLimitExceeded,
    Ideal,
    NonHomogeneousInput,
    colength,
    groebner_basis,
    is_zero_dimensional_at_origin,
    normal_form,
    radical_member,
    standard_basis,
)
from equimult.macaulay import macaulay_colength, truncated_quotient_dimension
from equimult.parser import parse_polynomial
from equimult.polynomial import MonomialOrder, Polynomial, divides, partials

from conftest import R2, R3, random_isolated_germ, random_poly


def P(src, ring=R2):
    return parse_polynomial(src, ring)


def ideal(*srcs, ring=R2):
    return Ideal([P(s, ring) for s in srcs], ring=ring)


# -- an independent division routine (oracle for the S-polynomial criterion) ----------


def naive_remainder(p: Polynomial, basis, key) -> Polynomial:
    """Textbook multivariate division, written without the library's kernel."""
    rem = {}
    h = dict(p.terms)
    while h:
        lm = max(h, key=key)
        c = h[lm]
        for g in basis:
            glm = max(g.terms, key=key)
            if all(a >= b for a, b in zip(lm, glm)):
                shift = tuple(a - b for a, b in zip(lm, glm))
                q = c / g.terms[glm]
                for e, gc in g.terms.items():
                    ne = tuple(a + b for a, b in zip(e, shift))
                    v = h.get(ne, 0) - q * gc
                    if v:
                        h[ne] = v
                    else:
                        h.pop(ne, None)
                break
        else:
            rem[lm] = h.pop(lm)
    return Polynomial(p.ring, rem)


def s_polynomial(f: Polynomial, g: Polynomial, key) -> Polynomial:
    a = max(f.terms, key=key)
    b = max(g.terms, key=key)
    lcm = tuple(max(x, y) for x, y in zip(a, b))
    fa = f.mul_term(tuple(x - y for x, y in zip(lcm, a)), 1 / f.terms[a])
    gb = g.mul_term(tuple(x - y for x, y in zip(lcm, b)), 1 / g.terms[b])
    return fa - gb


def assert_groebner(basis, key):
    for f, g in product(basis, repeat=2):
        if f is not g:
            assert not naive_remainder(s_polynomial(f, g, key), basis, key)


# -- global bases -------------------------------------------------------------------


def test_monomial_ideal_is_its_own_basis():
    basis = groebner_basis(ideal("x^2", "x*y"))
    assert set(basis) == {P("x^2"), P("x*y")}
    # by hand: S(x^2, x*y) = y*x^2 - x*x*y = 0
    assert_groebner(basis, GLOBAL.key)


def test_unit_ideal():
    assert groebner_basis(ideal("1")) == (R2.one(),)
    assert groebner_basis(ideal("x + 1", "x")) == (R2.one(),)


def test_linear_ideal():
    assert set(groebner_basis(ideal("x + y", "x - y"))) == {P("x"), P("y")}


def test_random_bases_satisfy_buchberger_criterion(rng):
    for _ in range(25):
        ring = rng.choice([R2, R3])
        gens = [random_poly(rng, ring, terms=3, max_deg=3) for _ in range(rng.randint(2, 3))]
        gens = [g for g in gens if g]
        if not gens:
            continue
        basis = groebner_basis(gens)
        assert_groebner(basis, GLOBAL.key)
        # same ideal: generators reduce to 0 and the basis is reproduced from itself
        for g in gens:
            assert not normal_form(g, Ideal(basis, ring=ring))
        assert groebner_basis(list(basis)) == basis


def test_reduced_basis_is_unique_and_deterministic(rng):
    for _ in range(10):
        gens = [random_poly(rng, R2, terms=3, max_deg=3) for _ in range(3)]
        gens = [g for g in gens if g]
        if len(gens) < 2:
            continue
        a = groebner_basis(gens)
        b = groebner_basis(list(reversed(gens)) + [gens[0] * gens[-1]])
        assert a == b
        assert groebner_basis(gens) == a


def test_normal_form_examples():
    I = ideal("x^2", "x*y")
    assert not normal_form(P("x^2*y^3"), I)
    assert normal_form(P("y^3"), I) == P("y^3")


def test_membership_in_monomial_ideals_is_divisibility(rng):
    for _ in range(40):
        gens = [tuple(rng.randint(0, 3) for _ in range(2)) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if any(g)]
        if not gens:
            continue
        I = Ideal([R2.monomial(g) for g in gens], ring=R2)
        p = random_poly(rng, R2, terms=3, max_deg=5)
        brute = all(any(divides(g, e) for g in gens) for e in p.terms)
        assert I.contains(p) == brute
        assert I.contains(p, LOCAL) == brute


# -- local bases ----------------------------------------------------------------------


def test_unit_is_invertible_locally():
    I = ideal("3*x^2 + 2*x", "y^2")
    assert sorted(I.leading_monomials(LOCAL)) == [(0, 2), (1, 0)]
    assert I.colength() == 2
    assert macaulay_colength(I.generators) == 2


@pytest.mark.parametrize("gens, expected", [
    (("x^2", "x*y"), [(1, 1), (2, 0)]),
    (("x + x^2",), [(1, 0)]),
])
def test_local_leading_ideals(gens, expected):
    assert sorted(ideal(*gens).leading_monomials(LOCAL)) == expected


def test_local_membership_differs_from_global():
    I = ideal("x + x^2")
    assert I.contains(P("x"), LOCAL)
    assert not I.contains(P("x"), GLOBAL)
    assert not I.contains(P("y"), LOCAL)


@pytest.mark.parametrize("gens, expected", [
    (("x", "y"), 1),
    (("3*x^2", "3*y^2"), 4),
    (("2*x*y", "x^2"), INFINITY),
    (("1 + x",), 0),
])
def test_colength(gens, expected):
    assert colength(ideal(*gens)) == expected


def test_standard_basis_generates_local_ideal(rng):
    for _ in range(15):
        f = random_isolated_germ(rng, 2)
        I = Ideal(partials(f))
        sb = standard_basis(I)
        for g in I.generators:
            assert I.contains(g, LOCAL)
        for g in sb:
            assert I.contains(g, LOCAL)


def test_mora_matches_macaulay_on_random_ideals(rng):
    """>= 30 random zero-dimensional local ideals with colength <= 50."""
    checked = 0
    while checked < 30:
        n = rng.choice([2, 3])
        ring = R3 if n == 3 else R2
        gens = []
        for i in range(n):
            e = [0] * n
            e[i] = rng.randint(1, 4)
            extra = random_poly(rng, ring, terms=2, max_deg=4, min_deg=1)
            gens.append(ring.monomial(e) + extra)
        mora = colength(Ideal(gens, ring=ring))
        if mora is INFINITY or mora > 50:
            continue
        assert mora == macaulay_colength(gens, 60), gens
        checked += 1


def test_truncated_rounds_agree_with_plain_mora(rng):
    for _ in range(10):
        f = random_isolated_germ(rng, rng.choice([2, 3]), max_pure=5)
        plain = Ideal(partials(f))
        forced = Ideal(partials(f))
        forced.mora_budget = 1
        assert plain.colength() == forced.colength()


def test_hard_instance_needs_truncation():
    f = P("x^3*y^4*z^3 - x^3*y^3*z + 3*x^6 - y^6 + x^4*z + 2*y^3*z + 2*z^4", R3)
    assert colength(Ideal(partials(f))) == 41
    assert macaulay_colength(partials(f), 30) == 41


def test_line_of_singularities_gives_infinity():
    f = P("-3*x^5*y^2*z^3 + x^3*y^5*z + y^7 + 2*x*y^2*z^4 - z^4", R3)
    I = Ideal(partials(f))
    I.mora_budget = 200
    assert I.colength() == INFINITY
    with pytest.raises(BasisLimitExceeded):
        I.standard_basis()


def test_macaulay_truncations():
    gens = [P("x^2"), P("y^3")]
    assert [truncated_quotient_dimension(gens, n) for n in range(1, 6)] == [1, 3, 5, 6, 6]
    assert macaulay_colength([P("x*y")], 10) is INFINITY


# -- ideal predicates -------------------------------------------------------------------


def test_radical_membership_examples():
    I = ideal("x^2", "x*y")
    assert radical_member(P("x"), I)
    assert not radical_member(P("y"), I)
    assert radical_member(R2.zero(), ideal("1"))
    assert radical_member(P("x + y"), ideal("x^2", "y^3"))
    assert not radical_member(P("x + y"), ideal("x^2"))


def test_radical_membership_matches_brute_force_on_monomial_ideals(rng):
    """p in sqrt(I) iff p^k in I for some k up to a colength-type bound."""
    for _ in range(20):
        gens = [tuple(rng.randint(0, 2) for _ in range(2)) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if any(g)]
        if not gens:
            continue
        I = Ideal([R2.monomial(g) for g in gens], ring=R2)
        p = random_poly(rng, R2, terms=2, max_deg=2, min_deg=1)
        if not p:
            continue
        brute = False
        q = R2.one()
        for _ in range(6):
            q = q * p
            if all(any(divides(g, e) for g in gens) for e in q.terms):
                brute = True
                break
        assert radical_member(p, I) == brute, (gens, p)


@pytest.mark.parametrize("gens, ring, expected", [
    (("3*x^2", "3*y^2", "3*z^2"), R3, True),
    (("2*x*y", "x^2"), R2, False),
    (("x", "y", "z"), R3, True),
])
def test_zero_dimensional_at_origin(gens, ring, expected):
    assert is_zero_dimensional_at_origin(ideal(*gens, ring=ring)) == expected


def test_zero_dimensional_needs_homogeneous_input():
    with pytest.raises(NonHomogeneousInput):
        is_zero_dimensional_at_origin(ideal("x + x^2"))


def test_order_requires_matching_rings():
    from equimult.polynomial import RingMismatch

    with pytest.raises(RingMismatch):
        ideal("x").normal_form(P("x", R3))


def test_exact_coefficients_survive(rng):
    I = ideal("2/3*x^2 - 5/7*y", "y^2")
    basis = groebner_basis(I)
    assert all(isinstance(c, Fraction) for g in basis for c in g.terms.values())
    assert MonomialOrder.DEGREVLEX.is_global and not MonomialOrder.NEG_DEGREVLEX.is_global
