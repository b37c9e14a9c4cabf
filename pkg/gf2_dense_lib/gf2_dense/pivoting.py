# gf2_dense/pivoting.py
"""
Pseudo-inverse of one b-column block with dynamic row selection.

Rows are picked one bit position at a time so that every principal minor
of the selected block stays non-singular. A bit position that no remaining
row can fill gets a virtual unit row instead of a column swap. Z is kept
as b words (row i of Z in word i, bit j = Z[i][j]) together with M = Z * S,
where S holds the selected or inserted rows in position order.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .errors import InadmissibleRowError
from .m4rm import default_splits, mult_acc_words, tables_from_rows
from .packed_matrix import DEFAULT_WORD_BITS, low_mask, parity, word_dtype

logger = logging.getLogger(__name__)

NONE = -1


@dataclass(frozen=True)
class PivotRecord:
    """Outcome of build_z for one column block."""

    source_rows: tuple  # per bit position: original index of the selected row, or NONE
    z: np.ndarray  # b words of rank bits: Z with the inserted columns removed
    m: np.ndarray  # b words of b bits: final working matrix
    z_full: np.ndarray  # b words of b bits: inverse of the completed square block
    word_bits: int

    @property
    def rank(self):
        return sum(1 for p in self.source_rows if p != NONE)

    @property
    def inserted(self):
        """Bit positions filled by a virtual unit row."""
        return tuple(k for k, p in enumerate(self.source_rows) if p == NONE)

    @property
    def selected(self):
        return tuple(k for k, p in enumerate(self.source_rows) if p != NONE)


def admission_mask(m_rows, k):
    """Bit k, plus bit i for every earlier row M_i that has bit k set."""
    mask = 1 << k
    for i, row in enumerate(m_rows[:k]):
        if (row >> k) & 1:
            mask |= 1 << i
    return mask


def incremental_inverse_update(z_rows, m_rows, row):
    """
    Grow Z_k = B_k^-1 by one row of the block.

    ``z_rows`` and ``m_rows`` hold k words; ``row`` is the next row as an
    integer (its bits past k do not enter the admission test). Returns the
    k + 1 word lists, or raises InadmissibleRowError when the grown principal
    minor would be singular.
    """
    k = len(z_rows)
    mask = admission_mask(m_rows, k)
    if not bin(row & mask).count("1") & 1:
        raise InadmissibleRowError(f"Row {row:#x} fails the admission test at position {k}.")
    z_new = 1 << k
    m_new = row
    for j in range(k):
        if (row >> j) & 1:
            z_new ^= z_rows[j]
            m_new ^= m_rows[j]
    z_next = list(z_rows)
    m_next = list(m_rows)
    for j in range(k):
        if (mask >> j) & 1:
            z_next[j] ^= z_new
            m_next[j] ^= m_new
    z_next.append(z_new)
    m_next.append(m_new)
    return z_next, m_next


def compress_columns(z_words, source_rows):
    """Drop the bit positions of inserted rows from every word of Z."""
    out = np.zeros_like(z_words)
    t = z_words.dtype.type
    one = t(1)
    for dst, src in enumerate(k for k, p in enumerate(source_rows) if p != NONE):
        out |= ((z_words >> t(src)) & one) << t(dst)
    return out


def build_z(col_block, n_rows=None, word_bits=None):
    """
    Select pivot rows of a column block and build its pseudo-inverse.

    ``col_block`` holds one b-bit word per candidate row and is permuted in
    place: the selected rows end up first, in selection order. Returns the
    PivotRecord and the list of (i, i_b) swaps that were applied, so the
    caller can mirror them on full rows.
    """
    cand = col_block
    if word_bits is None:
        word_bits = cand.dtype.itemsize * 8 if cand.size else DEFAULT_WORD_BITS
    dtype = word_dtype(word_bits)
    if n_rows is None:
        n_rows = cand.shape[0]
    t = dtype.type

    z_rows, m_rows = [], []
    source = [NONE] * word_bits
    origin = list(range(n_rows))
    swaps = []
    i_b = 0
    for k in range(word_bits):
        row = 1 << k
        if i_b < n_rows:
            mask = admission_mask(m_rows, k)
            hits = np.flatnonzero(parity(cand[i_b:n_rows] & t(mask)))
            if hits.size:
                i = i_b + int(hits[0])
                source[k] = origin[i]
                if i != i_b:
                    cand[[i, i_b]] = cand[[i_b, i]]
                    origin[i], origin[i_b] = origin[i_b], origin[i]
                    swaps.append((i, i_b))
                row = int(cand[i_b])
                i_b += 1
        z_rows, m_rows = incremental_inverse_update(z_rows, m_rows, row)

    z_full = np.array(z_rows, dtype=dtype)
    record = PivotRecord(
        source_rows=tuple(source),
        z=compress_columns(z_full, source),
        m=np.array(m_rows, dtype=dtype),
        z_full=z_full,
        word_bits=word_bits,
    )
    logger.debug("build_z: rank %d of %d candidates", record.rank, n_rows)
    return record, swaps


def selected_block(record, col_block):
    """B': the selected rows of a block already permuted by build_z."""
    return np.asarray(col_block[:record.rank])


def compute_y(d_words, record, c=None):
    """Y = D * Z, so that D = Y * B' when D lies in the span of B'."""
    d_words = np.asarray(d_words)
    y = np.zeros((1, d_words.shape[0]), dtype=record.z.dtype)
    if not record.rank or not d_words.size:
        return y[0]
    b = record.word_bits
    splits = default_splits(b, min(c or 8, b))
    tables = tables_from_rows(record.z[np.newaxis, :], splits)
    mult_acc_words(y, d_words.astype(record.z.dtype, copy=False), splits, tables)
    return y[0] & low_mask(y.dtype, record.rank)


def insertion_matrices(record):
    """
    J (b x r) and R (b x b) as 0/1 arrays.

    J inserts a zero row at each inserted position; R has a one on the
    diagonal at those positions.
    """
    b = record.word_bits
    J = np.zeros((b, record.rank), dtype=np.uint8)
    for t, k in enumerate(record.selected):
        J[k, t] = 1
    R = np.zeros((b, b), dtype=np.uint8)
    for k in record.inserted:
        R[k, k] = 1
    return J, R
