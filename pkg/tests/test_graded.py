import numpy as np
import pytest

from jacplane.graded import GradedMap, ideal_piece_matrix, jacobian_relation_map, multiplication_map
from jacplane.linalg import ExactMatrix, InternalError, PrimeField, in_column_span, kernel_basis, rank
from jacplane.poly import HomogPoly, graded_dim, monomial_index, multiply, parse_poly, partials

F = PrimeField(2_147_483_647)
CURVES = ["x^2 + y^2 + z^2", "y^4 - x*z^3", "x^3 + y^3 + z^3", "x*y*z*(x + y + z)", "y^5 + x^2*z^3 + x*y^2*z^2"]


def vector_of(g: HomogPoly) -> np.ndarray:
    return F.reduce(g.coefficient_vector())


def test_smooth_conic_has_no_constant_syzygy():
    m = jacobian_relation_map(parse_poly("x^2+y^2+z^2"), 0, F)
    assert m.matrix.shape == (3, 3)
    assert m.domain_degrees == ((0, 3),) and m.codomain_degree == 1
    assert rank(m.matrix) == 3
    assert kernel_basis(m.matrix) == []


def test_z_free_curve_has_constant_syzygy():
    m = jacobian_relation_map(parse_poly("x^5 + y^5"), 0, F)
    assert not m.matrix.matvec([0, 0, 1]).any()


def test_quartic_linear_syzygy():
    m = jacobian_relation_map(parse_poly("y^4 - x*z^3"), 1, F)
    assert len(kernel_basis(m.matrix)) == 1


def test_negative_degree_is_empty():
    m = jacobian_relation_map(parse_poly("x^3+y^3+z^3"), -1, F)
    assert m.matrix.shape == (graded_dim(1), 0)


def test_multiplication_map_examples():
    x = HomogPoly.linear(1, 0, 0)
    m = multiplication_map(x, 0, F)
    assert m.matrix.shape == (3, 1) and rank(m.matrix) == 1
    zero = HomogPoly.zero(4)
    assert not multiplication_map(zero, 2, F).matrix.entries.any()
    assert rank(multiplication_map(HomogPoly.linear(1, 1, 1), 1, F).matrix) == 3


def test_multiplication_map_columns_are_products():
    g = parse_poly("2*x^2 - y*z")
    m = multiplication_map(g, 2, F).matrix.entries
    for i, mono in enumerate(HomogPoly.monomial(tuple(e)) for e in __import__("jacplane").poly.monomials(2)):
        assert np.array_equal(m[:, i], vector_of(multiply(g, mono)))


def test_ideal_piece_examples():
    f = parse_poly("x^3+y^3+z^3")
    assert rank(ideal_piece_matrix(f, 2, F).matrix) == 3
    assert rank(ideal_piece_matrix(f, 1, F).matrix) == 0


def test_ideal_piece_quartic_degree6():
    # dim M(f)_6 = 6 by exact rational row reduction (tests/oracles.py)
    f = parse_poly("y^4 - x*z^3")
    assert rank(ideal_piece_matrix(f, 6, F).matrix) == graded_dim(6) - 6


@pytest.mark.parametrize("text", CURVES)
def test_relation_map_rank_nullity(text):
    f = parse_poly(text)
    for m in range(0, 2 * f.degree):
        mat = jacobian_relation_map(f, m, F).matrix
        assert rank(mat) + len(kernel_basis(mat)) == 3 * graded_dim(m)


@pytest.mark.parametrize("text", CURVES)
def test_koszul_relations_in_kernel(text):
    f = parse_poly(text)
    d = f.degree
    fx, fy, fz = partials(f)
    mat = jacobian_relation_map(f, d - 1, F).matrix
    zero = HomogPoly.zero(d - 1)
    for a, b, c in [(fy, -fx, zero), (fz, zero, -fx), (zero, fz, -fy)]:
        v = np.concatenate([vector_of(a), vector_of(b), vector_of(c)])
        assert not mat.matvec(v).any()


@pytest.mark.parametrize("text", CURVES)
def test_ideal_piece_closed_under_variables(text):
    f = parse_poly(text)
    d = f.degree
    rng = np.random.default_rng(1)
    for k in range(d - 1, 2 * d):
        lower = ideal_piece_matrix(f, k, F).matrix
        upper = ideal_piece_matrix(f, k + 1, F).matrix
        for _ in range(3):
            coeffs = rng.integers(-5, 6, size=lower.cols)
            g = HomogPoly.from_vector(k, lower.matvec(coeffs).tolist())
            for var in (HomogPoly.linear(1, 0, 0), HomogPoly.linear(0, 1, 0), HomogPoly.linear(0, 0, 1)):
                assert in_column_span(upper, vector_of(multiply(var, g)))


def test_ideal_piece_matches_relation_map():
    f = parse_poly("y^5 + x^2*z^3 + x*y^2*z^2")
    for m in range(6):
        a = jacobian_relation_map(f, m, F).matrix
        b = ideal_piece_matrix(f, m + f.degree - 1, F).matrix
        assert a == b


def test_degree_cap_enforced():
    f = parse_poly("x^3+y^3+z^3")
    with pytest.raises(InternalError):
        jacobian_relation_map(f, 11, F)


def test_graded_map_shape_invariant():
    with pytest.raises(InternalError):
        GradedMap(((1, 3),), 2, ExactMatrix.zeros(6, 8, F))
