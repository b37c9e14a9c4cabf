# gf2_dense/strassen.py
import logging

from .errors import ShapeError
from .m4rm import check_table_size, m4rm_mult
from .packed_matrix import BitMatrix, n_word_cols
from .tuning import optimal_table_size, strassen_threshold

logger = logging.getLogger(__name__)


def matrix_xor(A, B):
    """Entrywise sum A + B over GF(2)."""
    if A.shape != B.shape:
        raise ShapeError(f"Cannot add a {A.shape} matrix and a {B.shape} matrix.")
    return A ^ B


def _quadrant(X, row_half, word_half, i, j):
    """Quadrant (i, j) of X padded with zeros to row_half x word_half words."""
    b = X.word_bits
    out = BitMatrix(row_half, word_half * b, b)
    r0 = i * row_half
    q0 = j * word_half
    r1 = min(X.n_rows, r0 + row_half)
    q1 = min(X.n_word_cols, q0 + word_half)
    if r1 > r0 and q1 > q0:
        out.words[:q1 - q0, :r1 - r0] = X.words[q0:q1, r0:r1]
    return out


def _place(C, Q, row_half, word_half, i, j):
    r0 = i * row_half
    q0 = j * word_half
    r1 = min(C.n_rows, r0 + row_half)
    q1 = min(C.n_word_cols, q0 + word_half)
    if r1 > r0 and q1 > q0:
        C.words[q0:q1, r0:r1] = Q.words[:q1 - q0, :r1 - r0]


def _split_sizes(A, B):
    b = A.word_bits
    row_half = -(-A.n_rows // 2)
    inner_half = -(-n_word_cols(A.n_cols, b) // 2)
    outer_half = -(-n_word_cols(B.n_cols, b) // 2)
    return row_half, inner_half, outer_half


def strassen_mult(A, B, threshold=None, c=None):
    """
    Exact product A * B by Strassen recursion with an M4RM base case.

    Each level pads the operands with zero rows and whole zero word-columns
    up to even quadrants, forms 7 half-size products with 22 block XORs and
    strips the padding when assembling the result. Recursion stops as soon
    as a dimension drops below ``threshold``; a ``threshold`` under 2*b is
    raised to 2*b, the smallest size whose halves are still whole words.
    """
    if A.n_cols != B.n_rows:
        raise ShapeError(f"Cannot multiply {A.n_rows}x{A.n_cols} by {B.n_rows}x{B.n_cols}.")
    if A.word_bits != B.word_bits:
        raise ShapeError(f"Word sizes differ: {A.word_bits} and {B.word_bits}.")
    if c is None:
        c = optimal_table_size(A.word_bits, max(A.n_rows, 1))
    check_table_size(c)
    if threshold is None:
        threshold = strassen_threshold(c)
    threshold = max(int(threshold), 2 * A.word_bits)
    return _strassen(A, B, threshold, c, depth=0)


def _strassen(A, B, threshold, c, depth):
    if min(A.n_rows, A.n_cols, B.n_cols) < threshold:
        return m4rm_mult(A, B, c)
    logger.debug("strassen level %d: %dx%d * %dx%d", depth, A.n_rows, A.n_cols, B.n_rows, B.n_cols)

    rh, kh, mh = _split_sizes(A, B)
    A11, A12 = _quadrant(A, rh, kh, 0, 0), _quadrant(A, rh, kh, 0, 1)
    A21, A22 = _quadrant(A, rh, kh, 1, 0), _quadrant(A, rh, kh, 1, 1)
    # B's rows split at the word boundary of A's columns.
    b = A.word_bits
    B11, B12 = _quadrant(B, kh * b, mh, 0, 0), _quadrant(B, kh * b, mh, 0, 1)
    B21, B22 = _quadrant(B, kh * b, mh, 1, 0), _quadrant(B, kh * b, mh, 1, 1)

    def recurse(X, Y):
        return _strassen(X, Y, threshold, c, depth + 1)

    M1 = recurse(A11 ^ A22, B11 ^ B22)
    M2 = recurse(A21 ^ A22, B11)
    M3 = recurse(A11, B12 ^ B22)
    M4 = recurse(A22, B21 ^ B11)
    M5 = recurse(A11 ^ A12, B22)
    M6 = recurse(A21 ^ A11, B11 ^ B12)
    M7 = recurse(A12 ^ A22, B21 ^ B22)

    C11 = BitMatrix(rh, mh * b, b)
    C12 = BitMatrix(rh, mh * b, b)
    C21 = BitMatrix(rh, mh * b, b)
    C22 = BitMatrix(rh, mh * b, b)
    for M in (M1, M4, M5, M7):
        C11.words ^= M.words
    for M in (M3, M5):
        C12.words ^= M.words
    for M in (M2, M4):
        C21.words ^= M.words
    for M in (M1, M2, M3, M6):
        C22.words ^= M.words

    C = BitMatrix(A.n_rows, B.n_cols, b)
    _place(C, C11, rh, mh, 0, 0)
    _place(C, C12, rh, mh, 0, 1)
    _place(C, C21, rh, mh, 1, 0)
    _place(C, C22, rh, mh, 1, 1)
    return C.clear_padding()


def multiply(A, B, c=None, threshold=None):
    """Strassen above the switch point, plain M4RM below it."""
    if c is None:
        c = optimal_table_size(A.word_bits, max(A.n_rows, 1))
    check_table_size(c)
    if threshold is None:
        threshold = strassen_threshold(c)
    if min(A.n_rows, A.n_cols, B.n_cols) >= threshold:
        return strassen_mult(A, B, threshold, c)
    return m4rm_mult(A, B, c)
