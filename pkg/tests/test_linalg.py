from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from ccpoly.comm import disjointness
from ccpoly.linalg import (
    ExactMatrix, distinct_rows, gershgorin_full_rank_check, kronecker, random_boolean_matrix,
    rank_exact, rank_factorization, singular_fraction_experiment,
)

DISJ1 = ExactMatrix.from_rows([[1, 1], [1, 0]])


def matrices(max_dim=6, values=(0, 1)):
    return st.tuples(st.integers(1, max_dim), st.integers(1, max_dim)).flatmap(
        lambda d: st.lists(st.lists(st.sampled_from(values), min_size=d[1], max_size=d[1]),
                           min_size=d[0], max_size=d[0]))


def test_ranks():
    assert rank_exact(ExactMatrix.identity(4)) == 4
    assert rank_exact(DISJ1) == 2
    assert rank_exact(ExactMatrix.constant(3, 3)) == 1


@given(matrices(values=(0, 1, -2, 3)))
def test_rank_matches_sympy(rows):
    assert rank_exact(ExactMatrix.from_rows(rows)) == oracles.rank(rows)


@given(matrices(max_dim=4, values=(Fraction(1, 3), 0, 1, Fraction(-5, 2))))
def test_rational_rank_matches_sympy(rows):
    assert rank_exact(ExactMatrix.from_rows(rows)) == oracles.rank(rows)


def _product(L, R):
    Lr, Rr = L.to_rows(), R.to_rows()
    return [[sum((Lr[i][t] * Rr[t][j] for t in range(len(Rr))), 0) for j in range(R.cols)]
            for i in range(L.rows)]


def test_factorizations():
    f = rank_factorization(ExactMatrix.identity(2))
    assert f.r == 2 and f.left == ExactMatrix.identity(2) and f.right == ExactMatrix.identity(2)
    f = rank_factorization(ExactMatrix.constant(3, 3))
    assert f.r == 1 and f.left.to_rows() == [[1], [1], [1]] and f.right.to_rows() == [[1, 1, 1]]
    M = disjointness(2).matrix
    f = rank_factorization(M)
    assert f.r == 4 and _product(f.left, f.right) == M.to_rows()


@given(matrices(values=(0, 1, 2)))
def test_factorization_multiplies_back(rows):
    M = ExactMatrix.from_rows(rows)
    f = rank_factorization(M)
    assert f.r == rank_exact(M)
    assert _product(f.left, f.right) == M.to_rows()


def test_kronecker():
    I2 = ExactMatrix.identity(2)
    assert kronecker(I2, I2) == ExactMatrix.identity(4)
    K = kronecker(DISJ1, DISJ1)
    assert rank_exact(K) == 4
    # same multiset of rows as M_DISJ for n=2, up to reordering
    assert sorted(map(tuple, K.to_rows())) == sorted(map(tuple, disjointness(2).matrix.to_rows()))
    assert kronecker(DISJ1, ExactMatrix.from_rows([[1]])) == DISJ1
    with pytest.raises(ValueError):
        kronecker(ExactMatrix.identity(64), ExactMatrix.identity(128))


def test_distinct_rows():
    assert distinct_rows(ExactMatrix.identity(4)) == 4
    assert distinct_rows(ExactMatrix.constant(3, 3)) == 1


def test_gershgorin():
    M = ExactMatrix(4, 4, tuple(Fraction(int(i == j)) + Fraction(1, 20) for i in range(4) for j in range(4)))
    assert gershgorin_full_rank_check(M, Fraction(1, 20))
    assert gershgorin_full_rank_check(ExactMatrix.identity(2))
    assert not gershgorin_full_rank_check(DISJ1)
    with pytest.raises(ValueError):
        gershgorin_full_rank_check(DISJ1, Fraction(1, 2))


def test_random_matrices_are_seeded():
    assert random_boolean_matrix(5, 7) == random_boolean_matrix(5, 7)
    assert random_boolean_matrix(5, 7).is_boolean()


def test_two_by_two_singular_count():
    assert oracles.singular_count_2x2() == 10
    count = sum(rank_exact(ExactMatrix(2, 2, tuple((v >> i) & 1 for i in range(4)))) < 2
                for v in range(16))
    assert count == 10


def test_singular_fraction_is_deterministic():
    a = singular_fraction_experiment([3], 200, seed=5)
    assert a == singular_fraction_experiment([3], 200, seed=5)
    assert a[0]["trials"] == 200 and 0 < a[0]["singular_fraction"] < 1


def test_json_round_trip():
    M = ExactMatrix.from_rows([[Fraction(1, 3), 2], [0, -1]])
    assert ExactMatrix.from_json(M.to_json()) == M
