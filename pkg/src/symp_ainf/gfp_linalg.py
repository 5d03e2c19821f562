"""
Dense exact linear algebra over the integers and over prime fields.

Matrices are plain numpy ``int64`` arrays.  Field matrices carry canonical
representatives in ``[0, p-1]``; every routine that takes a prime returns
canonical entries again.  Integer products are guarded against int64
overflow instead of silently wrapping.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_INT64_SAFE = 2**62


def is_prime(n: int) -> bool:
    """Trial-division primality test (the primes used here are tiny)."""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field with ``p`` elements, ``p`` prime."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, x):
        return np.mod(x, self.p)

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(int(a), -1, self.p)


def _as_int(A) -> np.ndarray:
    A = np.asarray(A)
    if A.dtype == object or not np.issubdtype(A.dtype, np.integer):
        raise TypeError(f"expected an integer matrix, got dtype {A.dtype}")
    return A.astype(np.int64, copy=False)


def mat_mul(A, B, p: int | None = None) -> np.ndarray:
    """Exact product ``A @ B``, reduced mod ``p`` when a prime is given.

    Raises:
        ValueError: on a dimension mismatch.
        OverflowError: if the integer product could exceed int64.
    """
    A, B = _as_int(A), _as_int(B)
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[0]:
        raise ValueError(f"cannot multiply {A.shape} by {B.shape}")
    if p is not None:
        A, B = np.mod(A, p), np.mod(B, p)
    if A.size and B.size:
        bound = int(np.abs(A).max()) * int(np.abs(B).max()) * A.shape[1]
        if bound >= _INT64_SAFE:
            raise OverflowError("integer product may exceed int64")
    C = A @ B
    return np.mod(C, p) if p is not None else C


def reduce_mod_p(A, p: int | PrimeField) -> np.ndarray:
    """Entrywise reduction to canonical representatives."""
    if isinstance(p, PrimeField):
        p = p.p
    return np.mod(_as_int(A), p)


def rref(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p.

    Returns:
        (R, pivots): ``R`` has the same shape as ``A``; its first
        ``len(pivots)`` rows are the nonzero rows, with a 1 in each pivot
        column and zeros elsewhere in that column.
    """
    R = np.mod(_as_int(A), p).copy()
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        s = r + int(nz[0])
        if s != r:
            R[[r, s]] = R[[s, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, p)) % p
        col = R[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            R[rows] = (R[rows] - np.outer(col[rows], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def kernel_basis(A, p: int) -> np.ndarray:
    """Basis of the column kernel ``{v : A v = 0}`` as the rows of an array.

    The result has shape ``(cols - rank, cols)``.
    """
    A = np.asarray(A)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = rref(A, p)
    free = [c for c in range(n) if c not in set(pivots)]
    K = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        K[i, f] = 1
        for r, c in enumerate(pivots):
            K[i, c] = (-R[r, f]) % p
    return K


def row_basis(vectors, p: int, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Echelon basis of the span of ``vectors`` (given as rows).

    The returned basis is in reduced echelon form, so the coordinates of a
    vector ``v`` of the span are simply ``v[pivots]``.
    """
    V = np.asarray(vectors, dtype=np.int64)
    if V.size == 0:
        width = ncols if ncols is not None else (V.shape[1] if V.ndim == 2 else 0)
        return np.zeros((0, width), dtype=np.int64), []
    R, pivots = rref(V, p)
    return R[: len(pivots)].copy(), pivots


def solve(A, b, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``A x = b`` over F_p, or ``None`` if inconsistent."""
    A = np.mod(_as_int(A), p)
    b = np.mod(_as_int(b), p).reshape(-1)
    m, n = A.shape
    R, pivots = rref(np.hstack([A, b[:, None]]), p)
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = R[r, n]
    return x


def det_mod(A, p: int) -> int:
    """Determinant of a square matrix over F_p, for ``p < 2**31``."""
    M = np.mod(_as_int(A), p).copy()
    n = M.shape[0]
    if M.ndim != 2 or M.shape[1] != n:
        raise ValueError("det_mod expects a square matrix")
    det = 1
    for c in range(n):
        nz = np.flatnonzero(M[c:, c])
        if nz.size == 0:
            return 0
        s = c + int(nz[0])
        if s != c:
            M[[c, s]] = M[[s, c]]
            det = -det
        piv = int(M[c, c])
        det = det * piv % p
        inv = pow(piv, -1, p)
        below = M[c + 1:, c]
        rows = np.flatnonzero(below)
        if rows.size:
            f = (below[rows] * inv) % p
            M[c + 1 + rows] = (M[c + 1 + rows] - np.outer(f, M[c]) % p) % p
    return det % p
