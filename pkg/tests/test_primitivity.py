import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_matrix, random_unimodular
from unimat.errors import BadShape, EmptyInput, TooLarge
from unimat.linalg import hnf, rank_mod_p
from unimat.matrix import EmptyMat, IntMat
from unimat.primitivity import (
    RankDeficientOverQ,
    is_primitive,
    is_primitive_hnf,
    is_primitive_minor_oracle,
    unprimitive_witness,
)


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[1] * 7], True),
        ([[2, 4, 6]], False),
        ([[1, 0, 0, 0], [0, 1, 0, 0]], True),
        ([[3, 5]], True),
        ([[1, 0, 0], [0, 2, 0]], False),
        ([[1, 0, 0], [0, 1, 0]], True),
        ([[1, 2], [2, 4]], False),
        ([[0, 0, 0]], False),
        ([[6, 10, 15]], True),
        ([[2, 0], [0, 3]], False),
    ],
)
def test_examples_all_three_methods(rows, expected):
    A = IntMat(rows)
    assert is_primitive(A) is expected
    assert is_primitive_hnf(A) is expected
    assert is_primitive_minor_oracle(A) is expected


def test_minor_oracle_enumerates_minors():
    # 2x2 minors of [[1,0,0],[0,2,0]] are 2, 0, 0
    assert not is_primitive_minor_oracle(IntMat([[1, 0, 0], [0, 2, 0]]))


def test_hnf_definition_agrees():
    A = IntMat([[1, 1, 1], [0, 1, 2]])
    H = hnf(A.T).H
    assert H == IntMat([[1, 0], [0, 1], [0, 0]])
    assert is_primitive(A)


def test_shape_errors():
    with pytest.raises(BadShape):
        is_primitive(IntMat([[1], [0]]))
    with pytest.raises(EmptyInput):
        is_primitive(EmptyMat(3))
    with pytest.raises(TooLarge):
        is_primitive_minor_oracle(IntMat([[1] * 11]))


def test_random_agreement(rng):
    for _ in range(600):
        n = rng.randint(1, 7)
        k = rng.randint(1, n)
        A = random_matrix(rng, k, n, -4, 4)
        if rng.random() < 0.3:
            rows = [list(r) for r in A.rows]
            rows[rng.randrange(k)] = [x * rng.choice([2, 3, 5]) for x in rows[rng.randrange(k)]]
            A = IntMat(rows)
        expected = is_primitive_minor_oracle(A)
        assert is_primitive(A) == expected
        assert is_primitive_hnf(A) == expected


def test_large_entries_agreement(rng):
    for _ in range(100):
        n = rng.randint(2, 6)
        k = rng.randint(1, n)
        A = random_matrix(rng, k, n, -(10**12), 10**12)
        assert is_primitive(A) == is_primitive_minor_oracle(A)


def test_common_factor_times_unimodular_is_caught(rng):
    # primitive rows scaled by 6 stay full rank but have minors divisible by 6**k
    for _ in range(50):
        n = rng.randint(2, 6)
        U = random_unimodular(rng, n)
        k = rng.randint(1, n)
        A = IntMat(U.rows[:k])
        assert is_primitive(A)
        assert not is_primitive(6 * A)


@given(st.data())
@settings(max_examples=150, deadline=None)
def test_unimodular_right_action_invariant(data):
    seed = data.draw(st.integers(0, 2**32))
    r = random.Random(seed)
    n = r.randint(1, 6)
    k = r.randint(1, n)
    A = random_matrix(r, k, n, -6, 6)
    V = random_unimodular(r, n)
    assert is_primitive(A @ V) == is_primitive(A)


def test_witness_examples():
    assert unprimitive_witness(IntMat([[2, 4, 6]])) == 2
    assert unprimitive_witness(IntMat([[1, 0, 0], [0, 1, 0]])) is None
    assert unprimitive_witness(IntMat([[1, 2], [2, 4]])) is RankDeficientOverQ


def test_witness_soundness(rng):
    for _ in range(200):
        n = rng.randint(1, 6)
        k = rng.randint(1, n)
        A = random_matrix(rng, k, n, -5, 5)
        w = unprimitive_witness(A)
        if w is None:
            assert is_primitive(A)
        elif w is RankDeficientOverQ:
            assert hnf(A).rank < k
        else:
            assert not is_primitive(A)
            assert rank_mod_p(A, w) < k


def test_witness_large_prime_factor():
    p = 1_000_003
    A = IntMat([[p, 2 * p, 3 * p]])
    assert unprimitive_witness(A) == p
