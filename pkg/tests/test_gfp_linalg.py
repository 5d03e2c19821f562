from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from symp_ainf.gfp_linalg import (
    PrimeField,
    det_mod,
    is_prime,
    kernel_basis,
    mat_mul,
    rank,
    reduce_mod_p,
    row_basis,
    rref,
    solve,
)

PRIMES = st.sampled_from([2, 3, 5, 7, 11])


def small_matrix(rows=st.integers(1, 6), cols=st.integers(1, 6)):
    return st.tuples(rows, cols).flatmap(
        lambda s: arrays(np.int64, s, elements=st.integers(-20, 20)))


def test_prime_field_rejects_composites():
    assert PrimeField(7).p == 7
    for n in (0, 1, 4, 9, 15):
        with pytest.raises(ValueError):
            PrimeField(n)
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_field_inverse():
    F = PrimeField(7)
    assert all(a * F.inv(a) % 7 == 1 for a in range(1, 7))
    with pytest.raises(ZeroDivisionError):
        F.inv(14)


def test_mat_mul_examples():
    M = np.arange(9).reshape(3, 3)
    assert np.array_equal(mat_mul(np.eye(3, dtype=np.int64), M), M)
    assert not mat_mul(np.zeros((3, 3), dtype=np.int64), M).any()
    assert mat_mul([[2]], [[3]], 5).tolist() == [[1]]


def test_mat_mul_errors():
    with pytest.raises(ValueError):
        mat_mul(np.ones((2, 3), dtype=np.int64), np.ones((2, 3), dtype=np.int64))
    big = np.full((2, 2), 2**31, dtype=np.int64)
    with pytest.raises(OverflowError):
        mat_mul(big, big)
    with pytest.raises(TypeError):
        mat_mul(np.ones((2, 2)), np.ones((2, 2)))


def test_reduce_examples():
    p = 5
    assert reduce_mod_p([[p, 1], [0, -1]], p).tolist() == [[0, 1], [0, p - 1]]
    assert not reduce_mod_p(np.zeros((2, 2), dtype=np.int64), PrimeField(3)).any()
    assert not reduce_mod_p(7 * np.eye(4, dtype=np.int64), 7).any()


def test_kernel_examples():
    assert kernel_basis(np.eye(3, dtype=np.int64), 5).shape == (0, 3)
    assert np.array_equal(kernel_basis(np.zeros((3, 3), dtype=np.int64), 5), np.eye(3, dtype=np.int64))
    # over F_2 the only nonzero vector killed by [1, 1] is (1, 1)
    assert kernel_basis([[1, 1]], 2).tolist() == [[1, 1]]


def test_rank_examples():
    assert rank(np.eye(4, dtype=np.int64), 3) == 4
    assert rank(np.zeros((3, 2), dtype=np.int64), 3) == 0
    assert rank([[1, 2], [2, 4]], 5) == 1


def test_rref_is_reduced():
    R, piv = rref([[2, 4, 1], [1, 2, 4]], 5)
    assert piv == [0, 2]
    assert R[:2, piv].tolist() == [[1, 0], [0, 1]]


def test_det_mod():
    assert det_mod([[1, 2], [3, 4]], 7) == (-2) % 7
    assert det_mod([[1, 2], [2, 4]], 7) == 0


@settings(max_examples=60, deadline=None)
@given(small_matrix(), PRIMES)
def test_rank_nullity(A, p):
    K = kernel_basis(A, p)
    assert rank(A, p) + len(K) == A.shape[1]
    assert not mat_mul(A, K.T, p).any()
    if len(K):
        assert rank(K, p) == len(K)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5), PRIMES, st.randoms(use_true_random=False))
def test_reduction_is_multiplicative(m, k, n, p, rnd):
    rng = np.random.default_rng(rnd.randrange(2**32))
    A = rng.integers(-30, 30, (m, k))
    B = rng.integers(-30, 30, (k, n))
    assert np.array_equal(reduce_mod_p(mat_mul(A, B), p), mat_mul(reduce_mod_p(A, p), reduce_mod_p(B, p), p))
    assert np.array_equal(reduce_mod_p(A + A, p), reduce_mod_p(reduce_mod_p(A, p) * 2, p))


@settings(max_examples=60, deadline=None)
@given(small_matrix(), PRIMES, st.randoms(use_true_random=False))
def test_solve_consistent_systems(A, p, rnd):
    rng = np.random.default_rng(rnd.randrange(2**32))
    x0 = rng.integers(0, p, A.shape[1])
    b = mat_mul(A, x0[:, None], p)[:, 0]
    x = solve(A, b, p)
    assert x is not None
    assert np.array_equal(mat_mul(A, x[:, None], p)[:, 0], b)


def test_solve_inconsistent():
    assert solve([[1, 0], [1, 0]], [0, 1], 3) is None


@settings(max_examples=40, deadline=None)
@given(small_matrix(), PRIMES)
def test_row_basis_coordinates(A, p):
    B, piv = row_basis(A, p)
    assert len(B) == rank(A, p)
    for v in np.mod(A, p):
        assert np.array_equal(np.mod(v[piv] @ B, p), v)
