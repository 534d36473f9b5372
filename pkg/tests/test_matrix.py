import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unimat.errors import EmptyInput, MalformedHeader, NonIntegerToken, RowLengthMismatch
from unimat.matrix import EmptyMat, IntMat, max_norm, parse_matrix, serialize_matrix


def test_max_norm_examples():
    assert max_norm(IntMat([[0]])) == 0
    assert max_norm(IntMat([[2, -7], [3, 1]])) == 7
    assert max_norm(IntMat.identity(5)) == 1


def test_max_norm_rejects_empty():
    with pytest.raises(EmptyInput):
        max_norm(EmptyMat(3))


def test_parse_examples():
    assert parse_matrix(b"2 2\n1 0\n0 1\n") == IntMat.identity(2)
    assert parse_matrix(b"1 3\n1 1 1\n") == IntMat([[1, 1, 1]])
    with pytest.raises(RowLengthMismatch):
        parse_matrix(b"2 2\n1 0\n0\n")


@pytest.mark.parametrize(
    "text, exc",
    [
        (b"2 x\n1 0\n0 1\n", MalformedHeader),
        (b"2  2\n1 0\n0 1\n", MalformedHeader),
        (b"3 2\n1 0\n0 1\n", MalformedHeader),
        (b"1 2\n1 a\n", NonIntegerToken),
        (b"1 2\n1  2\n", RowLengthMismatch),
        (b"1 2\n+1 2\n", NonIntegerToken),
        (b'{"rows": 1, "cols": 2, "data": [[1, 2.5]]}', NonIntegerToken),
        (b'{"rows": 1, "cols": 2, "data": [[1]]}', RowLengthMismatch),
        (b'{"rows": 1}', MalformedHeader),
    ],
)
def test_parse_rejects_malformed(text, exc):
    with pytest.raises(exc):
        parse_matrix(text)


def test_serialize_examples():
    assert serialize_matrix(IntMat.identity(2)) == b"2 2\n1 0\n0 1\n"
    assert serialize_matrix(IntMat([[-3]])) == b"1 1\n-3\n"


def test_json_alternative():
    A = parse_matrix('{"rows": 2, "cols": 3, "data": [[1, 2, 3], [-4, 5, 6]]}')
    assert A == IntMat([[1, 2, 3], [-4, 5, 6]])


def test_empty_matrix_round_trip():
    assert parse_matrix(b"0 4\n") == EmptyMat(4)
    assert serialize_matrix(EmptyMat(4)) == b"0 4\n"


def test_round_trip_random():
    rng = random.Random(3)
    for _ in range(100):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        A = IntMat([[rng.randint(-10**6, 10**6) for _ in range(n)] for _ in range(m)])
        assert parse_matrix(serialize_matrix(A)) == A


def test_round_trip_512_bit_entries():
    rng = random.Random(5)
    A = IntMat([[rng.getrandbits(512) * rng.choice([-1, 1]) for _ in range(3)] for _ in range(3)])
    assert max(x.bit_length() for x in A.entries) > 500
    assert parse_matrix(serialize_matrix(A)) == A


matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-(2**80), 2**80), min_size=n, max_size=n), min_size=1, max_size=5
    )
).map(IntMat)


@given(matrices)
def test_round_trip_property(A):
    assert parse_matrix(serialize_matrix(A)) == A


@given(matrices)
def test_norm_transpose_invariant(A):
    assert max_norm(A) == max_norm(A.T)


def test_intmat_is_immutable():
    A = IntMat.identity(2)
    with pytest.raises(AttributeError):
        A.nrows = 3
    assert A.with_column(1, [5, 6]) == IntMat([[1, 5], [0, 6]])
    assert A == IntMat.identity(2)


def test_ragged_rows_rejected():
    with pytest.raises(RowLengthMismatch):
        IntMat([[1, 2], [3]])
    with pytest.raises(NonIntegerToken):
        IntMat([[1.5]])
