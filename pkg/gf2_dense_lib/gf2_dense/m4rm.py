# gf2_dense/m4rm.py
"""
Method of Four Russians multiplication on packed matrices.

A product with a block of b rows of B splits each b-bit word of A into K
groups of l_1..l_K bits. Table j holds all 2**l_j XOR combinations of the
rows of B in group j, so one row of the product costs K table lookups.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, ShapeError
from .packed_matrix import BitMatrix, low_mask
from .tuning import MAX_TABLE_SIZE, optimal_table_size

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class M4rmTables:
    splits: tuple
    tables: tuple  # table j: (mu, 2**splits[j]) words, column g is combination g
    n_cols: int
    word_bits: int

    @property
    def offsets(self):
        out, acc = [], 0
        for l in self.splits:
            out.append(acc)
            acc += l
        return tuple(out)

    def entry(self, j, g):
        """Table j, index g, as a 1 x n_cols matrix."""
        return BitMatrix.from_words(1, self.n_cols, self.tables[j][:, g:g + 1], self.word_bits)


def check_table_size(c):
    """Reject table sizes whose 2**c-entry tables cannot be built."""
    if not 1 <= c <= MAX_TABLE_SIZE:
        raise ContractError(f"Table size must lie in 1..{MAX_TABLE_SIZE}, got {c}.")
    return c


def default_splits(k, c):
    """floor(k/c) groups of c bits plus one remainder group."""
    check_table_size(c)
    splits = [c] * (k // c)
    if k % c:
        splits.append(k % c)
    return tuple(splits)


def tables_from_rows(rows, splits):
    """
    Build tables from a (mu, k) word array whose column t is source row t.

    Rows past k count as zero, so ``sum(splits)`` may exceed k.
    """
    mu, k = rows.shape
    tables = []
    offset = 0
    for l in splits:
        table = np.zeros((mu, 1 << l), dtype=rows.dtype)
        # Doubling: entries [2**t, 2**(t+1)) are entries [0, 2**t) plus row t.
        for t in range(l):
            width = 1 << t
            src = offset + t
            if src < k:
                np.bitwise_xor(table[:, :width], rows[:, src:src + 1], out=table[:, width:2 * width])
            else:
                table[:, width:2 * width] = table[:, :width]
        tables.append(table)
        offset += l
    return tuple(tables)


def build_tables(B, splits):
    """Tables for a b x m block B; the splits must sum to b."""
    if B.n_rows != B.word_bits:
        raise ShapeError(f"Table source must have exactly b={B.word_bits} rows, got {B.n_rows}.")
    splits = tuple(int(l) for l in splits)
    if sum(splits) != B.word_bits or min(splits) < 1:
        raise ContractError(f"Splits {splits} must be positive and sum to b={B.word_bits}.")
    check_table_size(max(splits))
    return M4rmTables(splits, tables_from_rows(B.words, splits), B.n_cols, B.word_bits)


def mult_acc_words(c_words, a_words, splits, tables):
    """c_words ^= A * B in place, where c_words is a (mu, n) view and a_words has n words."""
    dtype = a_words.dtype
    t = dtype.type
    offset = 0
    for l, table in zip(splits, tables):
        idx = ((a_words >> t(offset)) & low_mask(dtype, l)).astype(np.intp)
        c_words ^= table[:, idx]
        offset += l


def mult_acc(C, A_block, tables):
    """
    C ^= A_block * B, where ``tables`` were built from B.

    ``A_block`` is an n x b packed block: a BitMatrix with one word-column or
    the array of its n words.
    """
    if isinstance(A_block, BitMatrix):
        if A_block.n_word_cols != 1 or A_block.word_bits != tables.word_bits:
            raise ShapeError("A_block must be a single word-column with the tables' word size.")
        a_words = A_block.words[0]
    else:
        a_words = np.asarray(A_block)
    if a_words.shape != (C.n_rows,):
        raise ShapeError(f"A_block has {a_words.size} rows, C has {C.n_rows}.")
    if C.n_cols != tables.n_cols or C.word_bits != tables.word_bits:
        raise ShapeError(
            f"C is {C.n_rows}x{C.n_cols} (b={C.word_bits}); tables produce "
            f"{tables.n_cols} columns (b={tables.word_bits})."
        )
    mult_acc_words(C.words, a_words.astype(C.dtype, copy=False), tables.splits, tables.tables)


def m4rm_mult(A, B, c=None):
    """Exact product A * B over GF(2), one table sweep per b-row block of B."""
    if A.n_cols != B.n_rows:
        raise ShapeError(f"Cannot multiply {A.n_rows}x{A.n_cols} by {B.n_rows}x{B.n_cols}.")
    if A.word_bits != B.word_bits:
        raise ShapeError(f"Word sizes differ: {A.word_bits} and {B.word_bits}.")
    b = A.word_bits
    if c is None:
        c = optimal_table_size(b, max(A.n_rows, 1))
    check_table_size(c)
    logger.debug("m4rm %dx%d * %dx%d, b=%d, c=%d", A.n_rows, A.n_cols, B.n_rows, B.n_cols, b, c)
    C = BitMatrix(A.n_rows, B.n_cols, b)
    if not A.n_rows or not B.n_cols:
        return C
    for q in range(A.n_word_cols):
        rows = B.words[:, q * b:(q + 1) * b]
        splits = default_splits(rows.shape[1], min(c, rows.shape[1]))
        mult_acc_words(C.words, A.words[q], splits, tables_from_rows(rows, splits))
    return C
