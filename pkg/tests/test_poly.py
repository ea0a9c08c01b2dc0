import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypersing import linear
from hypersing.errors import ParseError
from hypersing.poly import (Form, Poly, act, derivatives, evaluate_matrix, fermat, monomials,
                            parse_form, parse_poly, permute)

from helpers import random_form, random_invertible


def test_parse_examples():
    f = parse_form("z0^3 + z1^3 + z2^3", 2, 3)
    assert len(f) == 3 and set(f.terms.values()) == {1}
    g = parse_form("z1^2*z2 - z0^3", 2, 3)
    assert g.terms == {(0, 2, 1): 1, (3, 0, 0): -1}


@pytest.mark.parametrize("text, n, d, match", [
    ("z0^2", 2, 3, "degree"),
    ("z0^3 + z3^3", 2, 3, "out of range"),
    ("z0^3 - z0^3", 2, 3, "zero"),
    ("z0^3 +", 2, 3, "term"),
    ("z0^3 ++ z1^3", 2, 3, "term"),
    ("2x", 2, 1, "unexpected"),
    ("", 2, 3, "empty"),
    ("3/0*z0^3", 2, 3, "denominator"),
    ("z0^3*", 2, 3, "variable"),
])
def test_parse_errors(text, n, d, match):
    with pytest.raises(ParseError, match=match):
        parse_form(text, n, d)


def test_parse_merges_and_handles_rationals():
    f = parse_form("z0*z1 + 1/2*z1*z0 - 3/2 * z1 * z0 + z2 ^ 2", 2, 2)
    assert f.terms == {(0, 0, 2): 1}
    g = parse_form("-2/4*z0*z0*z1", 2, 3)
    assert g.terms == {(2, 1, 0): Fraction(-1, 2)}


def test_canonical_text():
    f = parse_form("z2^3 - 2*z0*z1*z2 + 1/3*z0^3 - z1^3", 2, 3)
    assert str(f) == "1/3*z0^3 - z1^3 - 2*z0*z1*z2 + z2^3"


def test_evaluate():
    assert parse_form("z0^3+z1^3+z2^3", 2, 3).evaluate((1, 1, 1)) == 3
    assert parse_form("z0*z1*z2", 2, 3).evaluate((1, 2, 3)) == 6
    assert parse_form("z1^2*z2 - z0^3 - z0^2*z2", 2, 3).evaluate((0, 0, 1)) == 0
    with pytest.raises(ValueError):
        parse_form("z0*z1*z2", 2, 3).evaluate((1, 2))


def test_derivative_examples():
    grad, _ = derivatives(parse_form("z0^3", 2, 3))
    assert grad == (Form(2, 2, {(2, 0, 0): 3}), Form(2, 2), Form(2, 2))
    _, hess = derivatives(parse_form("z0*z1*z2", 2, 3))
    assert evaluate_matrix(hess, (0, 0, 1)) == linear.as_matrix([[0, 1, 0], [1, 0, 0], [0, 0, 0]])


def test_act_examples():
    f = parse_form("z0*z1*z2", 2, 3)
    assert act(linear.identity(3), f) == f
    assert act([[0, 1, 0], [1, 0, 0], [0, 0, 1]], parse_form("z0^3", 2, 3)) == parse_form("z1^3", 2, 3)
    assert act([[2, 0, 0], [0, 1, 0], [0, 0, 1]], f) == parse_form("2*z0*z1*z2", 2, 3)
    with pytest.raises(ValueError, match="singular"):
        act([[1, 1, 0], [1, 1, 0], [0, 0, 1]], f)


def test_act_matches_direct_substitution():
    # independent route: evaluate f at g p versus act(g, f) at p
    rng = random.Random(3)
    for _ in range(20):
        f = random_form(rng, 2, 3)
        g = random_invertible(rng, 3)
        p = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(3)]
        assert act(g, f).evaluate(p) == f.evaluate(linear.matvec(g, p))


def test_act_is_a_right_action_and_invertible():
    rng = random.Random(4)
    for _ in range(15):
        f = random_form(rng, 2, 3)
        g, h = random_invertible(rng, 3), random_invertible(rng, 3)
        assert act(g, act(h, f)) == act(linear.matmul(h, g), f)
        assert act(linear.inverse(g), act(g, f)) == f


def test_act_is_linear():
    rng = random.Random(5)
    for _ in range(10):
        f, g = random_form(rng, 2, 4), random_form(rng, 2, 4)
        m = random_invertible(rng, 3)
        assert act(m, f + g.scale(Fraction(2, 3))) == act(m, f) + act(m, g).scale(Fraction(2, 3))


def test_permute_matches_permutation_matrix():
    f = parse_form("z0^2*z1 + 3*z1*z2^2", 2, 3)
    perm = (2, 0, 1)
    inv = tuple(perm.index(i) for i in range(3))
    assert permute(f, perm) == act(linear.permutation_matrix(inv), f)
    assert permute(f, perm) == parse_form("z1^2*z2 + 3*z0^2*z2", 2, 3)


def test_mixed_degree_arithmetic_rejected():
    with pytest.raises(ValueError):
        fermat(2, 3) + fermat(2, 4)
    assert (fermat(2, 3) * fermat(2, 2)).d == 5


forms = st.builds(
    lambda n, d, coeffs: Form(n, d, dict(zip(monomials(n, d), coeffs))),
    st.integers(1, 3), st.integers(1, 5),
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=56, max_size=56),
)


@settings(max_examples=60, deadline=None)
@given(forms)
def test_euler_identity(f):
    zs = [Form.variable(f.n, k) for k in range(f.n + 1)]
    total = Form(f.n, f.d)
    grad, _ = derivatives(f)
    for z, g in zip(zs, grad):
        total = total + z * g
    assert total == f.scale(f.d)


@settings(max_examples=40, deadline=None)
@given(forms)
def test_homogeneity_preserved(f):
    grad, hess = derivatives(f)
    assert all(g.is_homogeneous() for g in grad)
    assert all(h.is_homogeneous() for row in hess for h in row)
    assert all(hess[i][j] == hess[j][i] for i in range(f.n + 1) for j in range(f.n + 1))


def test_second_euler_identity_at_critical_points():
    # Hess(f)(p) . p = (d-1) grad f(p); at critical points this is zero
    cases = [("z0*z1*z2", 2, 3, (0, 0, 1)), ("z1^2*z2 - z0^3", 2, 3, (0, 0, 1)),
             ("z1^2*z2 - z0^3 - z0^2*z2", 2, 3, (0, 0, 1)), ("z0^2*z2^2 + z1^4", 2, 4, (1, 0, 0))]
    for text, n, d, p in cases:
        f = parse_form(text, n, d)
        grad, hess = derivatives(f)
        assert all(g.evaluate(p) == 0 for g in grad)
        assert linear.matvec(evaluate_matrix(hess, p), p) == (0,) * (n + 1)
    rng = random.Random(6)
    for _ in range(20):
        f = random_form(rng, 2, 4)
        p = [rng.randint(-2, 2) for _ in range(3)]
        grad, hess = derivatives(f)
        lhs = linear.matvec(evaluate_matrix(hess, p), p)
        assert lhs == tuple(3 * g.evaluate(p) for g in grad)


@settings(max_examples=60, deadline=None)
@given(forms)
def test_parse_serialize_roundtrip(f):
    if not f:
        return
    text = str(f)
    assert parse_form(text, f.n, f.d) == f
    assert str(parse_form(text, f.n, f.d)) == text


def test_poly_general():
    p = parse_poly("z0^2 + z1 - 3", 1)
    assert not p.is_homogeneous()
    assert p.lead_monomial() == (2, 0)
    assert str(p) == "z0^2 + z1 - 3"
    assert isinstance(p, Poly)
