import random
from fractions import Fraction

import pytest

from equimult.family import Family, FamilyError
from equimult.fields import Field
from equimult.parser import (
    EmptyFamily,
    ExprSyntaxError,
    NegativeExponent,
    ParseError,
    TDegreeZeroMissing,
    UnknownVariable,
    parse_document,
    parse_family,
    parse_greuel_family,
    parse_polynomial,
    print_family,
    print_polynomial,
)
from equimult.polynomial import Polynomial, Ring, order

from conftest import R2, R3, random_poly


def test_three_term_polynomial():
    p = parse_polynomial("x^5 + z^15 + y^7*z", R3)
    assert len(p.terms) == 3
    assert order(p) == 5


def test_expansion_and_cancellation():
    assert parse_polynomial("(x + y)^2 - x^2 - 2*x*y", R2) == parse_polynomial("y^2", R2)


def test_rationals_and_unary_minus():
    p = parse_polynomial("-3/4*x + -(y)^2", R2)
    assert p.terms == {(1, 0): Fraction(-3, 4), (0, 2): Fraction(-1)}
    # unary minus binds tighter than '+', but '^' binds tighter still
    assert parse_polynomial("-x^2", R2) == -parse_polynomial("x^2", R2)


@pytest.mark.parametrize("src, error", [
    ("x^-1", NegativeExponent),
    ("x*w", UnknownVariable),
    ("2x", ExprSyntaxError),
    ("x y", ExprSyntaxError),
    ("(x + y", ExprSyntaxError),
    ("x +", ExprSyntaxError),
    ("x^2^3", ExprSyntaxError),
    ("x / y", ExprSyntaxError),
    ("x / 0", ExprSyntaxError),
    ("x $ y", ExprSyntaxError),
    ("", ExprSyntaxError),
])
def test_errors(src, error):
    with pytest.raises(error):
        parse_polynomial(src, R2)


def test_error_positions():
    with pytest.raises(ParseError) as exc:
        parse_polynomial("x + y^-2", R2)
    assert exc.value.position == 6
    with pytest.raises(UnknownVariable) as exc:
        parse_polynomial("x + 3*w", R2)
    assert exc.value.position == 6


@pytest.mark.parametrize("src, text", [
    ("y^2", "y^2"),
    ("0", "0"),
    ("y^3 + x^2*y", "x^2*y + y^3"),
    ("-x + 1/2", "-x + 1/2"),
    ("x - 3*y^2", "-3*y^2 + x"),
])
def test_printer(src, text):
    assert print_polynomial(parse_polynomial(src, R2)) == text


def test_round_trip_random(rng):
    for ring in (R2, R3):
        for _ in range(500):
            p = random_poly(rng, ring, terms=rng.randint(0, 6), max_deg=5, height=9)
            assert parse_polynomial(print_polynomial(p), ring) == p


def test_round_trip_over_parameter_field(rng):
    ring = Ring(("x", "y"), Field("a"))
    a = ring.const(ring.field.gen())
    for _ in range(100):
        p = random_poly(rng, R2).map_coefficients(ring.field, ring)
        q = random_poly(rng, R2).map_coefficients(ring.field, ring)
        r = p + a * q - (a * a) * p * q
        assert parse_polynomial(print_polynomial(r), ring) == r


# -- families -----------------------------------------------------------------------


def test_total_form_is_collected():
    F = parse_family("F: x^3 + y^3 + t*x^2")
    assert F.f.poly == parse_polynomial("x^3 + y^3", F.ring)
    assert F.support == (1,)
    assert F.g(1) == parse_polynomial("x^2", F.ring)


def test_zero_coefficients_are_omitted():
    F = parse_family("F: x^4 + y^4 + t^2*y^3")
    assert F.support == (2,)
    assert not F.g(1)


def test_block_form_and_vars_header():
    doc = parse_document("vars: x, y, z\nf: x^2 + y^2\ng[3]: z^2  # comment\nname: demo")
    assert doc.ring.vars == ("x", "y", "z")
    assert doc.family.support == (3,)
    assert doc.name == "demo"


def test_semicolon_separates_entries_but_not_descriptions():
    doc = parse_document("description: first; second\nf: x^2; g[1]: x*y")
    assert doc.description == "first; second"
    assert doc.family.support == (1,)


def test_expectations_are_kept():
    doc = parse_document("F: x^3 + t*x^2*y + y^3\nexpect.mu0: 4")
    assert doc.expect == {"mu0": "4"}


@pytest.mark.parametrize("src, error", [
    ("F: t*x^2", TDegreeZeroMissing),
    ("g[1]: x^2", TDegreeZeroMissing),
    ("vars: x, y", EmptyFamily),
    ("# nothing", EmptyFamily),
    ("F: x^2; f: x^2", ExprSyntaxError),
    ("f: x^2 + y^", ExprSyntaxError),
    ("vars: x, t\nf: x^2", ExprSyntaxError),
    ("bogus: 1", ExprSyntaxError),
    ("f: x^2\ng[1]: x + 1", ParseError),
    ("F: x^2 + t", ParseError),
])
def test_family_errors(src, error):
    with pytest.raises(error):
        parse_document(src)


def test_family_error_line_numbers():
    with pytest.raises(ParseError) as exc:
        parse_document("vars: x, y\nf: x^2\ng[1]: x*(y")
    assert exc.value.line == 3


def test_printed_family_round_trip(rng):
    """Random f, g_1..g_4: the printed F form parses back to the same decomposition."""
    for _ in range(100):
        f = random_poly(rng, R2, terms=4, min_deg=2)
        if not f:
            continue
        gs = {k: random_poly(rng, R2, terms=3, min_deg=1) for k in range(1, 5)}
        F = Family.from_polynomials(f, gs)
        again = parse_family(f"vars: x, y\nF: {print_polynomial(F.total)}")
        assert again.f.poly == F.f.poly
        assert {k: g.poly for k, g in again.deformations.items()} == {
            k: g.poly for k, g in F.deformations.items()
        }
        block = parse_family(print_family(F))
        assert block.total == F.total


def test_greuel_form_regroups():
    G = parse_greuel_family(
        "vars: x, y\nf: x^3 + y^3\nlambda[1]: t\ng[1]: x*y + x^2*y\nlambda[2]: t\ng[2]: -x*y + x*y^2"
    )
    assert len(G.pairs) == 2 and G.nu(1) == 1
    F = parse_family(
        "vars: x, y\nf: x^3 + y^3\nlambda[1]: t\ng[1]: x*y + x^2*y\nlambda[2]: t\ng[2]: -x*y + x*y^2"
    )
    assert F.g(1) == parse_polynomial("x^2*y + x*y^2", F.ring)


def test_greuel_form_needs_both_lines():
    with pytest.raises(ParseError):
        parse_document("f: x^3\nlambda[1]: t")


def test_symbolic_constant_switches_field():
    doc = parse_document("f: x^4 + y^4\nlambda[1]: t^3 + a*t^2\ng[1]: x*y")
    assert doc.ring.field.name == "QQ(a)"
    assert doc.family.support == (2, 3)


def test_family_rejects_g_not_vanishing_at_origin():
    f = parse_polynomial("x^2", R2)
    with pytest.raises(FamilyError):
        Family.from_polynomials(f, {1: parse_polynomial("1 + x", R2)})
    with pytest.raises(FamilyError):
        Family.from_polynomials(R2.zero(), {})
    assert Polynomial(R2, {}) == R2.zero()
