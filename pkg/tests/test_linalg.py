import itertools

import pytest

from robustpir.field import PrimeField
from robustpir.linalg import det, rank, rref, same_row_space, solve


F7 = PrimeField(7)


def test_rref_identity_and_pivots():
    R, piv = rref([[2, 4, 6], [1, 2, 4]], F7)
    assert piv == [0, 2]
    assert R == [[1, 2, 0], [0, 0, 1]]


def test_rank_drops_dependent_rows():
    assert rank([[1, 2, 3], [2, 4, 6], [0, 0, 0]], F7) == 1


def test_same_row_space_ignores_basis():
    assert same_row_space([[1, 0, 1], [0, 1, 1]], [[1, 1, 2], [1, 6, 0]], F7)
    assert not same_row_space([[1, 0, 1]], [[0, 1, 1]], F7)


def test_det_against_permutation_expansion():
    def leibniz(M, p):
        n = len(M)
        total = 0
        for perm in itertools.permutations(range(n)):
            inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
            prod = 1
            for i in range(n):
                prod *= M[i][perm[i]]
            total += (-1) ** inv * prod
        return total % p

    import random

    rng = random.Random(1)
    for _ in range(100):
        n = rng.randint(1, 4)
        M = [[rng.randrange(7) for _ in range(n)] for _ in range(n)]
        assert det(M, F7) == leibniz(M, 7)


def test_solve_singular():
    with pytest.raises(ValueError):
        solve([[1, 2], [2, 4]], [1, 1], F7)
