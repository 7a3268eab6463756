import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from equimult.family import Family
from equimult.polynomial import Polynomial, Ring, order

R2 = Ring(("x", "y"))
R3 = Ring(("x", "y", "z"))


def random_poly(rng: random.Random, ring: Ring, terms: int = 4, max_deg: int = 4,
                min_deg: int = 0, height: int = 5) -> Polynomial:
    out = {}
    n = ring.nvars
    for _ in range(terms):
        e = tuple(rng.randint(0, max_deg) for _ in range(n))
        if sum(e) < min_deg:
            continue
        c = Fraction(rng.randint(-height, height), rng.randint(1, 3))
        if c:
            out[e] = c
    return Polynomial(ring, out)


def random_isolated_germ(rng: random.Random, n: int, max_pure: int = 6, extra: int = 4) -> Polynomial:
    """Pure powers in every variable plus a few random terms of order >= 2."""
    ring = R3 if n == 3 else R2
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = rng.randint(2, max_pure)
        terms[tuple(e)] = Fraction(rng.choice([1, -1, 2, 3]))
    for _ in range(rng.randint(1, extra)):
        e = tuple(rng.randint(0, 4) for _ in range(n))
        if sum(e) >= 2:
            terms[e] = Fraction(rng.randint(-3, 3))
    return Polynomial(ring, terms)


@st.composite
def polynomials(draw, ring: Ring = R2, max_terms: int = 5, max_deg: int = 4, nonzero: bool = False):
    n = ring.nvars
    exps = st.tuples(*[st.integers(0, max_deg)] * n)
    coeffs = st.fractions(min_value=-6, max_value=6, max_denominator=4)
    terms = draw(st.dictionaries(exps, coeffs, min_size=1 if nonzero else 0, max_size=max_terms))
    p = Polynomial(ring, terms)
    if nonzero and not p:
        p = ring.one()
    return p


@pytest.fixture
def rng():
    return random.Random(20261014)


def _above_diagonal(rng: random.Random, weights, n: int, count: int, max_deg: int) -> dict:
    """Monomials of weighted degree > 1, so they leave the Milnor number unchanged."""
    out = {}
    for _ in range(200):
        if len(out) >= count:
            break
        e = tuple(rng.randint(0, max_deg) for _ in range(n))
        if sum(w * a for w, a in zip(weights, e)) > 1:
            out[e] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
    return out


def random_family_candidate(rng: random.Random) -> Family:
    """Brieskorn-type ``f`` plus coefficients that are sometimes harmless, sometimes not.

    Half of the ``g_k`` lie above the Newton diagonal of ``f``; the rest are
    arbitrary low-degree polynomials, which usually break mu-constancy.
    """
    n = rng.choice([2, 2, 3])
    ring = R3 if n == 3 else R2
    exps = [rng.randint(2, 6 if n == 2 else 4) for _ in range(n)]
    weights = [Fraction(1, a) for a in exps]
    f = {}
    for i, a in enumerate(exps):
        e = [0] * n
        e[i] = a
        f[tuple(e)] = Fraction(rng.choice([1, 2, -1]))
    f.update(_above_diagonal(rng, weights, n, rng.randint(0, 2), 5))
    gs = {}
    for k in range(1, rng.randint(1, 3) + 1):
        if rng.random() < 0.5:
            terms = _above_diagonal(rng, weights, n, rng.randint(1, 3), 5)
        else:
            terms = {}
            for _ in range(rng.randint(1, 3)):
                e = tuple(rng.randint(0, 4) for _ in range(n))
                if sum(e) >= 1:
                    terms[e] = Fraction(rng.choice([-2, -1, 1, 2]))
        if terms:
            gs[k] = Polynomial(ring, terms)
    return Family.from_polynomials(Polynomial(ring, f), gs)


def random_low_g1_family(rng: random.Random) -> Family:
    """A family whose ``g_1`` has multiplicity below that of ``f``."""
    n = rng.choice([2, 3])
    ring = R3 if n == 3 else R2
    while True:
        f = random_isolated_germ(rng, n, max_pure=5, extra=3)
        m = order(f)
        if m >= 2:
            break
    while True:
        g1 = random_poly(rng, ring, terms=rng.randint(1, 3), max_deg=m - 1, min_deg=1)
        if g1 and order(g1) < m:
            break
    gs = {1: g1}
    for k in range(2, rng.randint(2, 3) + 1):
        gk = random_poly(rng, ring, terms=2, max_deg=4, min_deg=1)
        if gk:
            gs[k] = gk
    return Family.from_polynomials(f, gs)


def random_family(rng: random.Random) -> Family:
    n = rng.choice([2, 3])
    ring = R3 if n == 3 else R2
    f = random_isolated_germ(rng, n)
    gs = {}
    for k in range(1, rng.randint(1, 4) + 1):
        gk = random_poly(rng, ring, terms=rng.randint(1, 3), max_deg=5, min_deg=1)
        if gk:
            gs[k] = gk
    if not gs:
        gs[1] = ring.gens()[0] ** 3
    return Family.from_polynomials(f, gs)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
