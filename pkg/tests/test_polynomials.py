"""Exact polynomial arithmetic, resultants, discriminants, text format."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quarticlog.errors import (
    ContextMismatchError,
    DegreeError,
    ExactDivisionError,
    ParseError,
)
from quarticlog.polynomials import (
    BinaryQuartic,
    Poly,
    discriminant,
    from_text,
    partial_derivative,
    poly_gcd,
    resultant,
    ring_arith,
    squarefree_part,
    subresultant_chain,
    substitute,
    sylvester_resultant,
    to_text,
    variables,
)
from quarticlog.rationals import rat

XY = variables("x", "y")
XYZ = variables("x", "y", "z")
X = variables("x")


def P(text, vars=None):
    return from_text(text, vars)


def test_variables_canonical_order():
    assert variables("t", "x", "s") == ("x", "s", "t")
    with pytest.raises(ParseError):
        variables("q")


def test_add_cancellation():
    p = P("1*x^1 + 1*y^1", XY)
    q = P("1*x^1 + -1*y^1", XY)
    assert p + q == P("2*x^1", XY)


def test_mul_difference_of_squares():
    p = P("1*x^1 + 1*y^1", XY)
    q = P("1*x^1 + -1*y^1", XY)
    assert p * q == P("1*x^2 + -1*y^2", XY)


def test_zero_absorbs():
    p = P("3*x^2 + -7/2*y^1", XY)
    assert Poly.zero(XY) * p == Poly.zero(XY)
    assert ring_arith(Poly.zero(XY), p, "mul").is_zero()


def test_context_mismatch_rejected():
    with pytest.raises(ContextMismatchError):
        P("1*x^1", X) + P("1*x^1", XY)


def test_partial_derivative_power_rule():
    p = P("1*x^4 + 1*y^4 + 1*z^4", XYZ)
    assert partial_derivative(p, "x") == P("4*x^3", XYZ)
    assert partial_derivative(P("1*x^4", XYZ), "y").is_zero()


def test_partial_derivative_product_structure():
    # f = x*g + h(y,z) gives f_x = g + x*g_x
    g = P("1*x^2 + 5*y^1*z^1 + -3", XYZ)
    h = P("2*y^3 + 1*z^3", XYZ)
    f = Poly.var("x", XYZ) * g + h
    assert partial_derivative(f, "x") == g + Poly.var("x", XYZ) * partial_derivative(g, "x")


def test_resultant_linear_cases():
    XU = variables("x", "u")
    p = P("1*x^2 + -1*u^1", XU)
    q = P("1*x^1 + -1", XU)
    assert resultant(p, q, "x") == P("1 + -1*u^1", XU)

    ab = variables("x", "u", "v")
    r = resultant(P("1*x^1 + -1*u^1", ab), P("1*x^1 + -1*v^1", ab), "x")
    assert r == P("1*v^1 + -1*u^1", ab) or r == P("1*u^1 + -1*v^1", ab)


def test_resultant_common_factor_vanishes():
    p = P("1*x^3 + 2*x^1 + 1", X)
    assert resultant(p, p, "x").is_zero()


def test_resultant_degree_zero_rejected():
    with pytest.raises(DegreeError):
        resultant(P("1*x^1", XY), P("3*y^2", XY), "x")


def _random_poly(rng, vars, max_deg, max_terms, height=6):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(0, max_deg) for _ in vars)
        terms[e] = rat(rng.randint(-height, height))
    return Poly.from_terms(vars, terms)


def test_resultant_matches_sylvester_oracle():
    import random

    rng = random.Random(7)
    checked = 0
    while checked < 120:
        p = _random_poly(rng, XY, 4, 4)
        q = _random_poly(rng, XY, 4, 4)
        if p.degree_in("x") < 1 or q.degree_in("x") < 1:
            continue
        assert resultant(p, q, "x") == sylvester_resultant(p, q, "x")
        checked += 1


def test_resultant_multiplicative_up_to_normalization():
    import random

    rng = random.Random(3)
    checked = 0
    while checked < 40:
        p = _random_poly(rng, XY, 2, 3, 4)
        q = _random_poly(rng, XY, 2, 3, 4)
        r = _random_poly(rng, XY, 2, 3, 4)
        if min(p.degree_in("x"), q.degree_in("x"), r.degree_in("x")) < 1:
            continue
        if (p * q).degree_in("x") != p.degree_in("x") + q.degree_in("x"):
            continue
        lhs = resultant(p * q, r, "x")
        rhs = resultant(p, r, "x") * resultant(q, r, "x")
        # with the Sylvester normalization the identity is exact
        assert lhs == rhs
        checked += 1


def test_discriminant_quadratic():
    ctx = variables("x", "u", "v")
    p = Poly.var("x", ctx) ** 2 + Poly.var("u", ctx) * Poly.var("x", ctx) + Poly.var("v", ctx)
    d = discriminant(p, "x")
    assert d == Poly.var("u", ctx) ** 2 - Poly.const(4, ctx) * Poly.var("v", ctx)


def test_discriminant_double_root_zero():
    p = P("1*x^2 + -2*x^1 + 1", X)  # (x-1)^2
    assert discriminant(p, "x").is_zero()


def test_discriminant_detects_squarefree_change():
    import random

    rng = random.Random(11)
    for _ in range(60):
        coeffs = [rng.randint(-4, 4) for _ in range(4)] + [1]
        p = Poly.from_terms(X, {(i,): c for i, c in enumerate(coeffs) if c})
        if p.degree_in("x") < 2:
            continue
        d = discriminant(p, "x")
        dropped = squarefree_part(p, "x").degree_in("x") < p.degree_in("x")
        assert d.is_zero() == dropped


def test_squarefree_part():
    p = P("1*x^1 + -1", X) ** 2 * P("1*x^1 + -2", X)
    sf = squarefree_part(p, "x")
    expected = (P("1*x^1 + -1", X) * P("1*x^1 + -2", X)).primitive_part()
    assert sf == expected
    # idempotent up to unit on square-free input
    assert squarefree_part(sf, "x") == sf.primitive_part()


def test_substitute_restriction_to_pencil():
    # restricting a quartic form to y = s*x + t produces a binary quartic in x
    ctx = variables("x", "y", "z")
    big = variables("x", "s", "t")
    F = P("1*x^4 + 2*x^1*y^3 + -1*z^4", ctx)
    image_y = Poly.var("s", big) * Poly.var("x", big) + Poly.var("t", big)
    r = substitute(F, {"y": image_y, "x": Poly.var("x", big), "z": Poly.const(1, big)})
    assert r.degree_in("x") == 4
    assert r.evaluate({"x": 2, "s": 1, "t": 3}) == F.evaluate({"x": 2, "y": 5, "z": 1})


def test_substitute_identity_and_collapse():
    p = P("1*x^1*y^1 + 3*y^2", XY)
    assert substitute(p, {}) == p
    collapsed = substitute(p, {"x": Poly.zero(XY)})
    assert collapsed == P("3*y^2", XY)


def test_exact_arithmetic_roundtrip_property():
    import random

    rng = random.Random(23)
    for _ in range(200):
        p = _random_poly(rng, XYZ, 3, 5, 30)
        q = _random_poly(rng, XYZ, 3, 5, 30)
        assert (p + q) - q == p


@settings(max_examples=60)
@given(
    st.lists(
        st.tuples(
            st.tuples(st.integers(0, 5), st.integers(0, 5)),
            st.fractions(min_value=-50, max_value=50),
        ),
        min_size=0,
        max_size=6,
    )
)
def test_text_format_roundtrip(items):
    p = Poly.from_terms(XY, {e: c for e, c in items if c})
    assert from_text(to_text(p), XY) == p


def test_text_format_is_graded_lex():
    p = P("1*x^1 + 1*y^2 + 5", XY)
    assert to_text(p) == "1*y^2 + 1*x^1 + 5"


def test_parse_errors():
    with pytest.raises(ParseError):
        from_text("x^2", X)  # coefficient is mandatory in the canonical format
    with pytest.raises(ParseError):
        from_text("1*q^2")


def test_exact_div_remainder_detected():
    p = P("1*x^2 + -1", X)
    with pytest.raises(ExactDivisionError):
        p.exact_div(P("1*x^1 + 2", X))
    assert p.exact_div(P("1*x^1 + 1", X)) == P("1*x^1 + -1", X)


def test_poly_gcd_basic():
    a = P("1*x^1 + -1", X) ** 2 * P("2*x^1 + 3", X)
    b = P("1*x^1 + -1", X) * P("1*x^1 + 5", X)
    g = poly_gcd(a, b)
    assert g == P("1*x^1 + -1", X)


def test_subresultant_chain_level_one():
    # chain of (f, f') for f with a double root keeps a degree-1 element
    f = P("1*x^1 + -3", X) ** 2 * P("1*x^1 + 1", X)
    chain = subresultant_chain(f, f.derivative("x"), "x")
    level1 = [c for c in chain if c.degree_in("x") == 1]
    assert level1, "expected a degree-1 subresultant"
    g = poly_gcd(f, f.derivative("x"))
    assert poly_gcd(level1[-1], g).degree_in("x") == 1


def test_binary_quartic_invariants_container():
    b = BinaryQuartic(1, 0, 0, 0, -1)
    assert b.evaluate(1, 1) == 0
    c = b.reparametrized(0, 1, 1, 0)  # swap the two parameters
    assert c.coefficients() == (rat(-1), rat(0), rat(0), rat(0), rat(1))
    with pytest.raises(Exception):
        BinaryQuartic(0, 0, 0, 0, 0)
