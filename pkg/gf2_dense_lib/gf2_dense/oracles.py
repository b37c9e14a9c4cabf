# gf2_dense/oracles.py
"""Slow, obviously correct reference computations on unpacked 0/1 arrays."""
import numpy as np

from .errors import ShapeError
from .packed_matrix import BitMatrix


def _bits(X):
    return X.to_array() if isinstance(X, BitMatrix) else np.asarray(X, dtype=np.uint8)


def naive_mult(A, B):
    """A * B over GF(2) by an integer matrix product reduced mod 2."""
    if A.n_cols != B.n_rows:
        raise ShapeError(f"Cannot multiply {A.n_rows}x{A.n_cols} by {B.n_rows}x{B.n_cols}.")
    # float64 sums are exact for inner dimensions below 2**53.
    prod = A.to_array().astype(np.float64) @ B.to_array().astype(np.float64)
    return BitMatrix.from_array(prod.astype(np.int64) & 1, A.word_bits)


def gauss_rank(X):
    """Row-echelon rank of a 0/1 array or BitMatrix."""
    M = _bits(X).copy()
    n, m = M.shape
    r = 0
    for j in range(m):
        if r == n:
            break
        rows = np.flatnonzero(M[r:, j]) + r
        if not rows.size:
            continue
        p = rows[0]
        if p != r:
            M[[r, p]] = M[[p, r]]
        below = np.flatnonzero(M[r + 1:, j]) + r + 1
        M[below] ^= M[r]
        r += 1
    return r


def in_span(rows, vec):
    """True when ``vec`` is a GF(2) combination of ``rows``."""
    rows = _bits(rows)
    vec = np.asarray(vec, dtype=np.uint8).reshape(1, -1)
    if not rows.size:
        return not vec.any()
    return gauss_rank(np.vstack([rows, vec])) == gauss_rank(rows)
