import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jps.linalg import MatrixQ, components, rank, rank_bareiss, rank_exact, rank_modular


def random_rank_r(rng, m, n, r):
    """A (m x n) product of random (m x r) and (r x n) rational matrices."""
    A = [[Fraction(rng.randint(-5, 5), rng.choice((1, 2, 3))) for _ in range(r)] for _ in range(m)]
    B = [[Fraction(rng.randint(-5, 5), rng.choice((1, 2, 3))) for _ in range(n)] for _ in range(r)]
    return [[sum(A[i][t] * B[t][j] for t in range(r)) for j in range(n)] for i in range(m)]


def test_small_examples():
    assert rank(MatrixQ.from_dense([[1, 2], [2, 4]])) == 1
    assert rank(MatrixQ.from_dense([[0, 0], [0, 0]])) == 0
    assert rank(MatrixQ.from_dense([[1, 0], [0, Fraction(1, 3)]])) == 2
    assert rank(MatrixQ(3, 0, [])) == 0


def test_unknown_method():
    with pytest.raises(ValueError):
        rank(MatrixQ.from_dense([[1]]), "lu")


def test_dense_roundtrip_and_hstack():
    M = MatrixQ.from_dense([[1, 0, 2], [0, 0, Fraction(1, 2)]])
    assert M.to_dense() == [[1, 0, 2], [0, 0, Fraction(1, 2)]]
    assert M.nnz() == 3
    H = M.hstack(M)
    assert H.cols == 6 and H.rank() == 2
    with pytest.raises(ValueError):
        M.hstack(MatrixQ(3, 1, []))


def test_components_split_blocks():
    M = MatrixQ.from_dense([[1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 1, 0], [0, 0, 0, 0]])
    blocks = sorted(sorted(b) for b in components(M))
    assert blocks == [[0, 1], [2]]


@pytest.mark.parametrize("seed", range(12))
def test_product_has_rank_r(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 9), rng.randint(1, 9)
    r = rng.randint(0, min(m, n))
    M = MatrixQ.from_dense(random_rank_r(rng, m, n, r))
    # generic factors give rank r; all three methods must agree with each other
    vals = {rank_exact(M), rank_modular(M), rank_bareiss(M)}
    assert len(vals) == 1
    assert vals.pop() <= r


def test_product_rank_exact_generic():
    rng = random.Random(99)
    hits = 0
    for _ in range(20):
        M = MatrixQ.from_dense(random_rank_r(rng, 7, 8, 4))
        hits += rank_exact(M) == 4
    assert hits >= 18


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=5, max_size=5), min_size=1, max_size=6))
def test_methods_agree(rows):
    M = MatrixQ.from_dense(rows)
    assert rank_exact(M) == rank_bareiss(M) == rank_modular(M)
    T = MatrixQ.from_dense([list(c) for c in zip(*rows)])
    assert rank_exact(T) == rank_exact(M)
