import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lftstat.gf2 import (
    BitMatrix,
    ShapeError,
    is_rref,
    multiply,
    random_matrix,
    rank,
    rref,
    stack,
)


def naive_product(a, b):
    A, B = a.to_lists(), b.to_lists()
    n, k, m = len(A), len(B), len(B[0])
    return [[sum(A[i][t] * B[t][j] for t in range(k)) % 2 for j in range(m)] for i in range(n)]


@st.composite
def bit_matrices(draw, rows=None, cols=None, max_dim=6):
    r = rows if rows is not None else draw(st.integers(1, max_dim))
    c = cols if cols is not None else draw(st.integers(1, max_dim))
    entries = draw(st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return BitMatrix.from_lists(entries)


def test_identity_product():
    m = BitMatrix.from_strings(["101", "011", "110"])
    assert multiply(BitMatrix.identity(3), m) == m


def test_char_two_product():
    a = BitMatrix.from_lists([[1, 1], [0, 1]])
    b = BitMatrix.from_lists([[1], [1]])
    assert multiply(a, b) == BitMatrix.from_lists([[0], [1]])


def test_product_matches_naive(rng):
    for _ in range(50):
        a = BitMatrix.from_array(rng.integers(0, 2, (8, 8)))
        b = BitMatrix.from_array(rng.integers(0, 2, (8, 8)))
        assert (a @ b).to_lists() == naive_product(a, b)


def test_product_shape_error():
    with pytest.raises(ShapeError):
        multiply(BitMatrix.zeros(2, 3), BitMatrix.zeros(2, 3))


def test_zero_dimension_rejected():
    with pytest.raises(ShapeError):
        BitMatrix.zeros(0, 3)
    with pytest.raises(ShapeError):
        BitMatrix.from_strings([""])


def test_stack():
    top = BitMatrix.from_lists([[1, 0]])
    bottom = BitMatrix.from_lists([[0, 1]])
    assert stack(top, bottom) == BitMatrix.identity(2)
    with pytest.raises(ShapeError):
        stack(top, BitMatrix.zeros(1, 3))


@given(bit_matrices())
def test_stack_duplicate_keeps_rank(m):
    assert rank(stack(m, m)) == rank(m)


def test_rank_examples():
    assert rank(BitMatrix.identity(4)) == 4
    assert rank(BitMatrix.zeros(3, 5)) == 0
    assert rank(BitMatrix.from_lists([[1, 1, 0], [1, 1, 0], [0, 0, 1]])) == 2


def test_rref_examples():
    assert rref(BitMatrix.identity(5)) == BitMatrix.identity(5)
    assert rref(BitMatrix.from_lists([[1, 1], [1, 0]])) == BitMatrix.identity(2)
    m = BitMatrix.from_strings(["0110", "0000", "1011", "1101"])
    r = rref(m)
    assert r.to_strings() == ["1011", "0110", "0000", "0000"]


@given(bit_matrices())
def test_rref_properties(m):
    r = rref(m)
    assert rref(r) == r
    assert is_rref(r)
    assert rank(r) == rank(m)
    assert sum(1 for row in r.data if row) == rank(m)
    # row space preserved: stacking adds nothing
    assert rank(stack(m, r)) == rank(m)
    pivots = [(row & -row).bit_length() for row in r.data if row]
    assert pivots == sorted(set(pivots))


@given(st.data())
def test_row_space_containment(data):
    m = data.draw(bit_matrices())
    x = data.draw(bit_matrices(cols=m.rows))
    assert rank(stack(m, multiply(x, m))) == rank(m)


@given(st.data())
def test_associative_and_distributive(data):
    a = data.draw(bit_matrices())
    b = data.draw(bit_matrices(rows=a.cols))
    b2 = data.draw(bit_matrices(rows=a.cols, cols=b.cols))
    c = data.draw(bit_matrices(rows=b.cols))
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + b2) == a @ b + a @ b2


def test_random_matrix_deterministic():
    a = random_matrix(4, 7, np.random.default_rng(3))
    b = random_matrix(4, 7, np.random.default_rng(3))
    assert a == b
    assert a.shape == (4, 7)


def test_random_matrix_fair_bit():
    rng = np.random.default_rng(11)
    n = 10_000
    ones = sum(random_matrix(1, 1, rng)[0, 0] for _ in range(n))
    sigma = (n * 0.25) ** 0.5
    assert abs(ones - n / 2) < 5 * sigma


def test_random_matrix_uniform_2x2():
    rng = np.random.default_rng(12)
    n = 10_000
    counts = {}
    for _ in range(n):
        m = random_matrix(2, 2, rng)
        counts[m] = counts.get(m, 0) + 1
    assert len(counts) == 16
    p = 1 / 16
    sigma = (n * p * (1 - p)) ** 0.5
    assert all(abs(c - n * p) < 5 * sigma for c in counts.values())


def test_text_round_trip():
    m = BitMatrix.from_strings(["0110", "1000"])
    assert m.to_strings() == ["0110", "1000"]
    assert m[0, 1] == 1 and m[1, 0] == 1 and m[0, 0] == 0
    assert BitMatrix.from_array(m.to_array()) == m
    assert m.T.T == m
