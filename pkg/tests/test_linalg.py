import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conelab.linalg import (
    Matrix,
    determinant,
    kernel_basis,
    mat_vec,
    primitive_vector,
    rank,
    rref,
    sample_rational,
)

small = st.integers(min_value=-6, max_value=6)


@st.composite
def matrices(draw, max_dim=6):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return rows


def test_rank_small_cases():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank(Matrix.identity(5)) == 5
    assert rank([[Fraction(1, 2), Fraction(1, 3)], [3, 2]]) == 1
    assert rank([]) == 0


def test_determinant():
    assert determinant([[2, 1], [1, 1]]) == 1
    assert determinant([[1, 2], [2, 4]]) == 0
    assert determinant([[Fraction(1, 2), 0], [0, 4]]) == 2


def test_rref_pivots():
    rows, pivots = rref([[0, 2, 4], [1, 1, 1]])
    assert pivots == [0, 1]
    assert rows[0] == [1, 0, -1]
    assert rows[1] == [0, 1, 2]


def test_kernel_vectors_are_in_the_kernel():
    m = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0]]
    ker = kernel_basis(m)
    assert len(ker) == 2
    for v in ker:
        assert not any(mat_vec(m, v))


def test_matrix_product_and_transpose():
    a = Matrix.from_rows([[1, 2], [3, 4]])
    assert (a @ Matrix.identity(2)) == a
    assert a.transpose().to_rows() == [[1, 3], [2, 4]]
    assert a.stack(a).rows == 4


def test_primitive_vector():
    assert primitive_vector([Fraction(1, 2), Fraction(-1, 3)]) == [3, -2]
    assert primitive_vector([0, -4, 6]) == [0, 2, -3]


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_nullity(rows):
    cols = len(rows[0])
    ker = kernel_basis(rows)
    assert rank(rows) + len(ker) == cols
    for v in ker:
        assert not any(mat_vec(rows, v))


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_of_transpose(rows):
    t = [list(col) for col in zip(*rows)]
    assert rank(rows) == rank(t)


@settings(max_examples=40, deadline=None)
@given(matrices(max_dim=5))
def test_rank_matches_sympy(rows):
    import sympy

    assert rank(rows) == sympy.Matrix(rows).rank()


def test_sample_rational_range_and_determinism():
    a = [sample_rational(random.Random(7), 10) for _ in range(3)]
    b = [sample_rational(random.Random(7), 10) for _ in range(3)]
    assert a == b
    rng = random.Random(1)
    h = 50
    xs = [sample_rational(rng, h) for _ in range(4000)]
    assert all(-h <= x <= h and x.denominator == 1 for x in xs)
    mean = sum(xs) / len(xs)
    sigma = ((2 * h + 1) ** 2 - 1) ** 0.5 / (12 ** 0.5) / len(xs) ** 0.5
    assert abs(float(mean)) < 3 * sigma


def test_bad_shape_rejected():
    with pytest.raises(ValueError):
        Matrix.from_rows([[1, 2], [3]])
