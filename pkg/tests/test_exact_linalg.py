from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from trainalg.exact_linalg import (
    QI, GaussRat, Matrix, ShapeError, SingularMatrixError, Subspace,
    determinant, format_scalar, intersect, kernel, parse_scalar, rref, subspace_equal,
)

small = st.integers(-4, 4)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


def test_rref_of_rank_one_matrix():
    r, piv = rref(Matrix([[2, 4], [1, 2]]))
    assert r == Matrix([[1, 2]])
    assert piv == [0]


def test_inverse_and_determinant_of_unimodular_matrix():
    m = Matrix([[2, 1], [3, 2]])
    assert m.inverse() == Matrix([[2, -1], [-3, 2]])
    assert m.det() == 1


def test_singular_inverse_raises():
    with pytest.raises(SingularMatrixError):
        Matrix([[1, 2], [2, 4]]).inverse()


def test_kernel_of_single_row():
    k = kernel(Matrix([[1, 1]]))
    assert k.dim == 1
    assert k.contains([1, -1])
    assert not k.contains([1, 1])


def test_shape_mismatch():
    with pytest.raises(ShapeError):
        Matrix([[1, 2]]) @ Matrix([[1, 2]])


def test_gaussian_scalars_parse_and_print():
    z = parse_scalar("1/2+3/4*i", QI)
    assert z == GaussRat(mpq(1, 2), mpq(3, 4))
    assert format_scalar(z) == "1/2+3/4*i"
    assert format_scalar(parse_scalar("-1/2*i", QI)) == "-1/2*i"
    assert parse_scalar("1+1*i", QI) == GaussRat(1, 1)
    assert z * z.conjugate() == GaussRat(z.norm2(), 0)


def test_json_round_trip_over_gaussian_rationals():
    m = Matrix([[GaussRat(1, 2), GaussRat(0, -1)], [GaussRat(3, 0), GaussRat(mpq(1, 3), 1)]], QI)
    assert Matrix.from_json(m.to_json()) == m


def test_empty_transpose_keeps_shape():
    assert Matrix.zeros(0, 5).T.shape == (5, 0)


@settings(max_examples=40, deadline=None)
@given(square(3))
def test_determinant_matches_fraction_cofactor(rows):
    def cof(a):
        if len(a) == 1:
            return a[0][0]
        return sum((-1) ** j * a[0][j] * cof([r[:j] + r[j + 1:] for r in a[1:]]) for j in range(len(a)))
    assert determinant(Matrix(rows)) == Fraction(cof(rows))


@settings(max_examples=40, deadline=None)
@given(square(3))
def test_inverse_is_two_sided(rows):
    m = Matrix(rows)
    if m.det() == 0:
        return
    inv = m.inverse()
    assert (m @ inv).is_identity() and (inv @ m).is_identity()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=3))
def test_rank_nullity(rows):
    m = Matrix(rows)
    _, piv = rref(m)
    k = kernel(m)
    assert len(piv) + k.dim == 4
    for v in k.vectors():
        assert not any(m.apply(v))


def test_subspace_intersection():
    a = Subspace.span([[1, 0, 0], [0, 1, 0]], 3)
    b = Subspace.span([[0, 1, 0], [0, 0, 1]], 3)
    c = intersect(a, b)
    assert subspace_equal(c, Subspace.span([[0, 5, 0]], 3))
    assert c.basis == Matrix([[0, 1, 0]])
