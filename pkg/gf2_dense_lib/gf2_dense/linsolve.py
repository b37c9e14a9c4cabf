# gf2_dense/linsolve.py
"""Null space and linear systems read off an LUFactors."""
import logging

import numpy as np

from .decomposition import decompose, forward_substitute
from .errors import ShapeError
from .packed_matrix import BitMatrix
from .strassen import multiply

logger = logging.getLogger(__name__)


def _leading_column(R, row, n_cols):
    b = R.word_bits
    for q in range(R.n_word_cols):
        w = int(R.words[q, row])
        if q * b >= n_cols:
            break
        if w:
            j = q * b + (w & -w).bit_length() - 1
            return j if j < n_cols else None
    return None


def gauss_jordan(R, n_cols=None):
    """
    Reduce a full row rank matrix in place to reduced echelon form.

    Pivots are searched among the first ``n_cols`` columns only, so an
    augmented right-hand side can ride along. Returns the pivot column of
    every row, or None for a row that has no pivot there.
    """
    if n_cols is None:
        n_cols = R.n_cols
    b = R.word_bits
    t = R.dtype.type
    pivots = []
    for s in range(R.n_rows):
        p = _leading_column(R, s, n_cols)
        pivots.append(p)
        if p is None:
            continue
        q, k = divmod(p, b)
        hit = (R.words[q] >> t(k)) & t(1)
        hit[s] = 0
        rows = np.flatnonzero(hit)
        if rows.size:
            R.words[:, rows] ^= R.words[:, s:s + 1]
    return pivots


def null_space(A, variant="block", c=None):
    """Basis N (m x (m - rank)) with A N = 0; null(A) = null(U) since L has full column rank."""
    m = A.n_cols
    F = decompose(A, variant, c=c)
    R = F.U.copy()
    pivots = gauss_jordan(R)
    pivot_cols = np.array([p for p in pivots if p is not None], dtype=np.intp)
    free = np.setdiff1d(np.arange(m), pivot_cols)
    logger.debug("null space: rank %d, %d free columns", F.rank, free.size)

    bits = np.zeros((m, free.size), dtype=np.uint8)
    bits[free, np.arange(free.size)] = 1
    if pivot_cols.size and free.size:
        reduced = R.to_array()
        bits[pivot_cols] = reduced[[s for s, p in enumerate(pivots) if p is not None]][:, free]
    return BitMatrix.from_array(bits, A.word_bits)


def solve(A, rhs, variant="block", c=None):
    """
    A particular solution x of A x = rhs with all free variables zero.

    Returns a 0/1 uint8 vector of length m, or None when the system is
    inconsistent.
    """
    rhs = np.asarray(rhs, dtype=np.uint8).ravel()
    n, m, b = A.n_rows, A.n_cols, A.word_bits
    if rhs.size != n:
        raise ShapeError(f"Right-hand side has {rhs.size} entries, A has {n} rows.")
    F = decompose(A, variant, c=c)
    r = F.rank
    prhs = BitMatrix.from_array((rhs & 1)[F.P.perm][:, np.newaxis], b)

    z = forward_substitute(F.L.row_slice(0, r), prhs.row_slice(0, r), c)
    if r < n:
        tail = prhs.row_slice(r, n)
        if r:
            tail.words ^= multiply(F.L.row_slice(r, n), z, c).words
        if tail.any():
            logger.debug("solve: inconsistent right-hand side")
            return None

    aug = BitMatrix(r, m + 1, b)
    aug.paste(F.U, 0, 0)
    aug.paste(z, 0, m)
    pivots = gauss_jordan(aug, m)
    x = np.zeros(m, dtype=np.uint8)
    last = aug.to_array()[:, m] if r else np.zeros(0, dtype=np.uint8)
    for s, p in enumerate(pivots):
        if p is not None:
            x[p] = last[s]
    return x
