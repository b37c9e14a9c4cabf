# gf2_dense/decomposition.py
"""
Block factorization P A = L U without column permutations.

Word-column j of the working matrix is reduced in one step: build_z picks
the pivot rows B of that column block and its pseudo-inverse Z, the rows
below get Y = D Z, and the Schur complement E ^= Y C is applied with M4RM.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, ShapeError
from .m4rm import check_table_size, default_splits, mult_acc_words, tables_from_rows
from .packed_matrix import BitMatrix, RowPermutation, low_mask
from .pivoting import build_z, compute_y
from .strassen import multiply
from .tuning import optimal_table_size

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LUFactors:
    P: RowPermutation
    L: BitMatrix  # n x r, unit lower trapezoidal
    U: BitMatrix  # r x m, upper block staircase
    block_ranks: tuple  # r_j for every word-column j
    insertions: tuple  # per word-column, bit positions filled by virtual rows

    @property
    def rank(self):
        return sum(self.block_ranks)

    def permuted(self, A):
        """P * A."""
        return self.P.apply(A)

    def block_offsets(self):
        """First U row of every block row."""
        out, acc = [], 0
        for r in self.block_ranks:
            out.append(acc)
            acc += r
        return tuple(out)


def _set_diagonal(L, start, count):
    idx = np.arange(start, start + count)
    b = L.word_bits
    t = L.dtype.type
    L.words[idx // b, idx] |= t(1) << (idx % b).astype(L.dtype)


def decompose_block(A, c=None):
    """Non-recursive factorization, one word-column per step."""
    n, m, b = A.n_rows, A.n_cols, A.word_bits
    if c is None:
        c = optimal_table_size(b, max(n, 1))
    check_table_size(c)
    mu = A.n_word_cols
    W = A.copy()
    L = BitMatrix(n, min(n, m), b)
    perm = np.arange(n)
    block_ranks, insertions = [], []
    r0 = 0

    for q in range(mu):
        width = min(b, m - q * b)
        if r0 >= n:
            block_ranks.append(0)
            insertions.append(tuple(range(width)))
            continue

        cand = W.words[q, r0:].copy()
        record, swaps = build_z(cand, word_bits=b)
        for i, j in swaps:
            W.row_swap(r0 + i, r0 + j)
            L.row_swap(r0 + i, r0 + j)
            perm[[r0 + i, r0 + j]] = perm[[r0 + j, r0 + i]]

        rj = record.rank
        block_ranks.append(rj)
        insertions.append(tuple(k for k in record.inserted if k < width))
        logger.debug("block %d: rank %d, pivot rows %d..%d", q, rj, r0, r0 + rj)

        if rj:
            lo = r0 + rj
            y = compute_y(W.words[q, lo:], record, c)
            splits = default_splits(rj, min(c, rj))
            tables = tables_from_rows(W.words[q:, r0:lo], splits)
            mult_acc_words(W.words[q:, lo:], y, splits, tables)

            _set_diagonal(L, r0, rj)
            if lo < n:
                Y = BitMatrix(n - lo, rj, b)
                Y.words[0] = y & low_mask(Y.dtype, rj)
                L.paste(Y, lo, r0)
            r0 = lo
        elif not W.words[q + 1:, r0:].any():
            # The remaining Schur complement vanished: every later block has rank 0.
            for qq in range(q + 1, mu):
                block_ranks.append(0)
                insertions.append(tuple(range(min(b, m - qq * b))))
            break

    return LUFactors(
        P=RowPermutation(perm),
        L=L.col_slice(0, r0),
        U=W.row_slice(0, r0),
        block_ranks=tuple(block_ranks),
        insertions=tuple(insertions),
    )


def forward_substitute(L_top, C, c=None):
    """
    X = L_top^-1 C for a unit lower triangular L_top.

    Each b x b diagonal block is solved row by row; the rows below it are
    updated with one M4RM sweep.
    """
    r = L_top.n_rows
    if L_top.n_cols != r:
        raise ShapeError(f"L_top must be square, got {L_top.n_rows}x{L_top.n_cols}.")
    if C.n_rows != r:
        raise ShapeError(f"C has {C.n_rows} rows, L_top has {r}.")
    if L_top.word_bits != C.word_bits:
        raise ShapeError(f"Word sizes differ: {L_top.word_bits} and {C.word_bits}.")
    b = L_top.word_bits
    t = L_top.dtype.type
    idx = np.arange(r)
    diag = (L_top.words[idx // b, idx] >> (idx % b).astype(L_top.dtype)) & t(1)
    if not diag.all():
        raise ContractError("forward_substitute needs a unit diagonal.")
    if c is None:
        c = optimal_table_size(b, max(r, 1))
    check_table_size(c)

    X = C.copy()
    for q in range(L_top.n_word_cols):
        start = q * b
        stop = min(start + b, r)
        for i in range(start + 1, stop):
            below = int(L_top.words[q, i]) & ((1 << (i - start)) - 1)
            while below:
                low = below & -below
                X.words[:, i] ^= X.words[:, start + low.bit_length() - 1]
                below ^= low
        if stop < r:
            splits = default_splits(stop - start, min(c, stop - start))
            tables = tables_from_rows(X.words[:, start:stop], splits)
            mult_acc_words(X.words[:, stop:], L_top.words[q, stop:], splits, tables)
    return X


def decompose_recursive(A, min_cols=None, c=None, threshold=None):
    """
    Split the columns in two halves on a word boundary, factor the left half,
    update the right half with L21 (L11^-1 C) and factor what remains.
    """
    n, m, b = A.n_rows, A.n_cols, A.word_bits
    if min_cols is None:
        min_cols = 4 * b
    if c is None:
        c = optimal_table_size(b, max(n, 1))
    check_table_size(c)
    mu = A.n_word_cols
    if m <= min_cols or mu < 2:
        return decompose_block(A, c)

    left_words = -(-mu // 2)
    p = left_words * b
    logger.debug("recursive split of %dx%d at column %d", n, m, p)
    left = decompose_recursive(A.col_slice(0, p), min_cols, c, threshold)
    r1 = left.rank

    PA_R = left.P.apply(A.col_slice(p, m))
    C2 = forward_substitute(left.L.row_slice(0, r1), PA_R.row_slice(0, r1), c)
    L21 = left.L.row_slice(r1, n)
    A2 = PA_R.row_slice(r1, n)
    if r1 and n > r1:
        A2.words ^= multiply(L21, C2, c, threshold).words
    right = decompose_recursive(A2, min_cols, c, threshold)
    r2 = right.rank

    perm = left.P.perm.copy()
    perm[r1:] = perm[r1:][right.P.perm]

    L = BitMatrix(n, r1 + r2, b)
    L.paste(left.L.row_slice(0, r1), 0, 0)
    L.paste(right.P.apply(L21), r1, 0)
    L.paste(right.L, r1, r1)

    U = BitMatrix(r1 + r2, m, b)
    U.paste(left.U, 0, 0)
    U.paste(C2, 0, p)
    U.paste(right.U, r1, p)

    return LUFactors(
        P=RowPermutation(perm),
        L=L,
        U=U,
        block_ranks=left.block_ranks + right.block_ranks,
        insertions=left.insertions + right.insertions,
    )


def decompose(A, variant="block", **kwargs):
    if variant == "block":
        return decompose_block(A, kwargs.get("c"))
    if variant == "recursive":
        return decompose_recursive(A, **kwargs)
    raise ValueError(f"Unknown variant {variant!r}; choose 'block' or 'recursive'.")


def rank(A, variant="block", c=None):
    """rank(A) = sum of the block ranks; wide matrices are factored transposed."""
    if A.n_rows < A.n_cols:
        A = A.transpose()
    return decompose(A, variant, c=c).rank
