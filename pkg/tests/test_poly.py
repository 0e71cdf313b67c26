import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacplane.poly import (
    HomogPoly,
    InputError,
    ParseError,
    add,
    euler_defect,
    format_poly,
    graded_dim,
    monomial_from_index,
    monomial_index,
    monomials,
    multiply,
    parse_poly,
    partials,
    product,
    reduced_check,
)

X, Y, Z = (HomogPoly.monomial(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))


@st.composite
def homog_polys(draw, max_degree=6):
    d = draw(st.integers(1, max_degree))
    mons = monomials(d)
    picks = draw(st.lists(st.integers(0, len(mons) - 1), min_size=1, max_size=6))
    coeffs = {tuple(int(v) for v in mons[i]): draw(st.integers(-50, 50)) for i in picks}
    return HomogPoly(d, coeffs)


@pytest.mark.parametrize("k, expected", [(0, 1), (3, 10), (-2, 0), (5, 21)])
def test_graded_dim(k, expected):
    assert graded_dim(k) == expected


def test_monomial_order_is_lex():
    assert [tuple(m) for m in monomials(1)] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert [tuple(m) for m in monomials(2)][:3] == [(2, 0, 0), (1, 1, 0), (1, 0, 1)]


@pytest.mark.parametrize("k", range(0, 19))
def test_monomial_index_bijection(k):
    mons = monomials(k)
    assert len(mons) == graded_dim(k)
    assert monomial_index(mons).tolist() == list(range(len(mons)))
    for i in range(len(mons)):
        assert monomial_index(monomial_from_index(i, k)) == i


def test_parse_examples():
    f = parse_poly("y^4 - x*z^3")
    assert f.degree == 4 and len(f) == 2
    assert f == HomogPoly(4, {(0, 4, 0): 1, (1, 0, 3): -1})
    q = parse_poly("16*x^4*y + 128*x^2*y^2*z - 4*x^3*z^2 + 256*y^3*z^2 - 144*x*y*z^3 + 27*z^5")
    assert q.degree == 5 and len(q) == 6


def test_parse_juxtaposition_and_parentheses():
    assert parse_poly("xy^2") == multiply(X, multiply(Y, Y))
    assert parse_poly("-2 x (x + y) z") == parse_poly("-2*x^2*z - 2*x*y*z")
    assert parse_poly("  x ^ 3 +\ty^3 ") == parse_poly("x^3+y^3")


def test_parse_rejects_non_homogeneous():
    with pytest.raises(InputError, match="degree 1.*degree 2"):
        parse_poly("x^2 + y^2 + z")


def test_parse_rejects_zero():
    with pytest.raises(InputError, match="zero polynomial"):
        parse_poly("x*y - y*x")


@pytest.mark.parametrize("text, offset", [("x^2 + + y^2", 6), ("x^", 2), ("x + (y", 6), ("x $ y", 2)])
def test_parse_error_reports_offset(text, offset):
    with pytest.raises(ParseError) as info:
        parse_poly(text)
    assert info.value.offset == offset
    assert f"offset {offset}" in str(info.value)


def test_parse_big_coefficients_kept_exact():
    f = parse_poly("123456789012345678901234567890*x^2 + y^2")
    assert f.coeffs[(2, 0, 0)] == 123456789012345678901234567890


@settings(max_examples=80, deadline=None)
@given(homog_polys())
def test_parse_print_round_trip(f):
    if f.is_zero():
        assert format_poly(f) == "0"
        return
    assert parse_poly(format_poly(f)) == f


def test_partials_examples():
    fx, fy, fz = partials(parse_poly("x^5 + y^5"))
    assert fz.is_zero() and fz.degree == 4
    assert partials(parse_poly("x^3+y^3+z^3")) == (3 * X * X, 3 * Y * Y, 3 * Z * Z)
    assert partials(parse_poly("y^4 - x*z^3")) == (
        parse_poly("-z^3"),
        parse_poly("4*y^3"),
        parse_poly("-3*x*z^2"),
    )
    with pytest.raises(InputError):
        partials(HomogPoly(0, {(0, 0, 0): 5}))


@settings(max_examples=60, deadline=None)
@given(homog_polys())
def test_euler_relation(f):
    assert euler_defect(f).is_zero()


def test_arithmetic_examples():
    assert multiply(X, Y) == HomogPoly(2, {(1, 1, 0): 1})
    zero = add(X * X, -(X * X))
    assert zero.is_zero() and zero.degree == 2
    cubic = product([X, Y, X + Y])
    assert cubic.degree == 3 and cubic == parse_poly("x^2*y + x*y^2")
    with pytest.raises(InputError):
        add(X, X * Y)


def test_reduced_check_examples():
    assert not reduced_check(parse_poly("x^2*y"), seed=0)
    assert reduced_check(parse_poly("x*y*z"), seed=0)
    assert reduced_check(parse_poly("y^4 - x*z^3"), seed=0)
    assert not reduced_check(parse_poly("(x + y + z)^1 * (x + y + z)"), seed=3)


def test_reduced_check_multiple_seeds():
    f = parse_poly("x*(x^2 + y*z)^2")
    assert not any(reduced_check(f, seed=s) for s in range(5))
