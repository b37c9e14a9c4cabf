# gf2_dense/packed_matrix.py
"""
Bit-packed dense matrices over GF(2).

A matrix with ``n_rows`` rows and ``n_cols`` columns is stored as
``mu = ceil(n_cols / b)`` word-columns. Word-column ``q`` is a contiguous
block of ``n_rows`` unsigned ``b``-bit words, and bit ``k`` (weight ``2**k``)
of word ``(i, q)`` holds entry ``(i, q*b + k)``: the least significant bit is
the leftmost column of the word. Padding bits past ``n_cols`` are zero after
every public operation.
"""
from dataclasses import dataclass

import numpy as np

from .errors import ShapeError

WORD_DTYPES = {8: np.uint8, 16: np.uint16, 32: np.uint32, 64: np.uint64}
DEFAULT_WORD_BITS = 64
CACHE_LINE = 64


def word_dtype(word_bits):
    """Return the numpy dtype holding one ``word_bits``-bit word."""
    try:
        return np.dtype(WORD_DTYPES[word_bits])
    except KeyError:
        raise ValueError(
            f"Word size must be one of {sorted(WORD_DTYPES)}, got {word_bits}."
        ) from None


def n_word_cols(n_cols, word_bits):
    return -(-n_cols // word_bits)


def low_mask(dtype, n_bits):
    """Word with the ``n_bits`` least significant bits set."""
    bits = dtype.itemsize * 8
    if n_bits >= bits:
        return dtype.type(np.iinfo(dtype).max)
    return dtype.type((1 << n_bits) - 1)


def parity(words):
    """Parity of the population count of every word (0 or 1, same dtype)."""
    x = np.array(words, copy=True)
    t = x.dtype.type
    shift = x.dtype.itemsize * 4
    while shift:
        x ^= x >> t(shift)
        shift //= 2
    return x & t(1)


def _aligned_zeros(n_blocks, n_rows, dtype):
    """Zeroed (n_blocks, n_rows) word array, each block on a cache line."""
    itemsize = dtype.itemsize
    per_line = CACHE_LINE // itemsize
    stride = -(-n_rows // per_line) * per_line
    nbytes = n_blocks * stride * itemsize
    raw = np.zeros(nbytes + CACHE_LINE, dtype=np.uint8)
    offset = (-raw.ctypes.data) % CACHE_LINE
    buf = raw[offset:offset + nbytes].view(dtype).reshape(n_blocks, stride)
    return buf[:, :n_rows]


class BitMatrix:
    """Dense n_rows x n_cols matrix over GF(2), packed into b-bit words."""

    __hash__ = None

    def __init__(self, n_rows, n_cols, word_bits=DEFAULT_WORD_BITS):
        if n_rows < 0 or n_cols < 0:
            raise ShapeError(f"Matrix dimensions must be non-negative, got {n_rows}x{n_cols}.")
        self.dtype = word_dtype(word_bits)
        self.n_rows = int(n_rows)
        self.n_cols = int(n_cols)
        self.word_bits = int(word_bits)
        self.words = _aligned_zeros(n_word_cols(self.n_cols, self.word_bits), self.n_rows, self.dtype)

    # --- Construction ---

    @classmethod
    def zeros(cls, n_rows, n_cols, word_bits=DEFAULT_WORD_BITS):
        return cls(n_rows, n_cols, word_bits)

    @classmethod
    def identity(cls, n, word_bits=DEFAULT_WORD_BITS):
        out = cls(n, n, word_bits)
        idx = np.arange(n)
        out.words[idx // word_bits, idx] = out.dtype.type(1) << (idx % word_bits).astype(out.dtype)
        return out

    @classmethod
    def from_words(cls, n_rows, n_cols, words, word_bits=None):
        """Copy a (mu, n_rows) word array into a new matrix, clearing padding."""
        words = np.asarray(words)
        if word_bits is None:
            word_bits = words.dtype.itemsize * 8
        out = cls(n_rows, n_cols, word_bits)
        if words.shape != out.words.shape:
            raise ShapeError(f"Expected a word array of shape {out.words.shape}, got {words.shape}.")
        out.words[...] = words
        out.clear_padding()
        return out

    @classmethod
    def from_array(cls, bits, word_bits=DEFAULT_WORD_BITS):
        """Pack a two-dimensional 0/1 array."""
        try:
            arr = np.asarray(bits, dtype=np.uint8)
        except ValueError as exc:
            raise ShapeError(f"Rows must all have the same length: {exc}") from None
        if arr.ndim != 2:
            raise ShapeError(f"Expected a two-dimensional array, got {arr.ndim} dimension(s).")
        if arr.size and arr.max() > 1:
            raise ValueError("Entries of a GF(2) matrix must be 0 or 1.")
        n, m = arr.shape
        out = cls(n, m, word_bits)
        if n and m:
            mu = out.n_word_cols
            padded = np.zeros((n, mu * word_bits), dtype=np.uint8)
            padded[:, :m] = arr
            packed = np.packbits(padded, axis=1, bitorder="little")
            out.words[...] = packed.view(f"<u{word_bits // 8}").T
        return out

    # --- Shape ---

    @property
    def shape(self):
        return (self.n_rows, self.n_cols)

    @property
    def n_word_cols(self):
        return self.words.shape[0]

    @property
    def last_word_mask(self):
        """Mask of the valid bits in the last word-column."""
        tail = self.n_cols - (self.n_word_cols - 1) * self.word_bits
        return low_mask(self.dtype, tail)

    def clear_padding(self):
        if self.n_word_cols and self.n_cols % self.word_bits:
            self.words[-1] &= self.last_word_mask
        return self

    def padding_is_clean(self):
        if not self.n_word_cols:
            return True
        return not np.any(self.words[-1] & ~self.last_word_mask)

    # --- Element access ---

    def _check_index(self, i, j):
        if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
            raise IndexError(f"Entry ({i}, {j}) is outside a {self.n_rows}x{self.n_cols} matrix.")

    def get(self, i, j):
        self._check_index(i, j)
        q, k = divmod(j, self.word_bits)
        return int(self.words[q, i] >> self.dtype.type(k)) & 1

    def set(self, i, j, value):
        self._check_index(i, j)
        q, k = divmod(j, self.word_bits)
        bit = self.dtype.type(1) << self.dtype.type(k)
        if value & 1:
            self.words[q, i] |= bit
        else:
            self.words[q, i] &= ~bit

    # --- Row operations ---

    def _check_row(self, i):
        if not 0 <= i < self.n_rows:
            raise IndexError(f"Row {i} is outside a matrix with {self.n_rows} rows.")

    def row_swap(self, i, k):
        self._check_row(i)
        self._check_row(k)
        if i != k:
            self.words[:, [i, k]] = self.words[:, [k, i]]

    def row_xor_range(self, dst, src, q_from, q_to):
        """word(dst, q) ^= word(src, q) for q in [q_from, q_to)."""
        self._check_row(dst)
        self._check_row(src)
        if not 0 <= q_from <= q_to <= self.n_word_cols:
            raise IndexError(
                f"Word-column range [{q_from}, {q_to}) is outside 0..{self.n_word_cols}."
            )
        self.words[q_from:q_to, dst] ^= self.words[q_from:q_to, src]

    def permute_rows(self, perm):
        """New matrix whose row i is row perm[i] of this one."""
        perm = np.asarray(perm, dtype=np.intp)
        if perm.shape != (self.n_rows,):
            raise ShapeError(f"Permutation of length {perm.size} for {self.n_rows} rows.")
        return BitMatrix.from_words(self.n_rows, self.n_cols, self.words[:, perm], self.word_bits)

    # --- Slicing and assembly ---

    def copy(self):
        return BitMatrix.from_words(self.n_rows, self.n_cols, self.words, self.word_bits)

    def row_slice(self, start, stop):
        if not 0 <= start <= stop <= self.n_rows:
            raise IndexError(f"Row range [{start}, {stop}) is outside 0..{self.n_rows}.")
        return BitMatrix.from_words(stop - start, self.n_cols, self.words[:, start:stop], self.word_bits)

    def col_slice(self, start, stop):
        """Columns [start, stop); start must lie on a word boundary."""
        if not 0 <= start <= stop <= self.n_cols:
            raise IndexError(f"Column range [{start}, {stop}) is outside 0..{self.n_cols}.")
        if start % self.word_bits:
            raise ValueError(f"Column slices must start on a multiple of {self.word_bits}.")
        q0 = start // self.word_bits
        q1 = q0 + n_word_cols(stop - start, self.word_bits)
        return BitMatrix.from_words(self.n_rows, stop - start, self.words[q0:q1], self.word_bits)

    def paste(self, src, row0, col0):
        """OR the bits of ``src`` into this matrix with its (0, 0) at (row0, col0)."""
        if src.word_bits != self.word_bits:
            raise ShapeError("Cannot paste between different word sizes.")
        if row0 + src.n_rows > self.n_rows or col0 + src.n_cols > self.n_cols:
            raise ShapeError(
                f"A {src.n_rows}x{src.n_cols} block at ({row0}, {col0}) "
                f"does not fit in a {self.n_rows}x{self.n_cols} matrix."
            )
        if not src.n_rows or not src.n_cols:
            return self
        t = self.dtype.type
        q0, off = divmod(col0, self.word_bits)
        rows = slice(row0, row0 + src.n_rows)
        mu = src.n_word_cols
        self.words[q0:q0 + mu, rows] |= src.words << t(off)
        if off:
            hi = min(self.n_word_cols, q0 + 1 + mu)
            self.words[q0 + 1:hi, rows] |= (src.words >> t(self.word_bits - off))[:hi - q0 - 1]
        return self

    # --- Conversion ---

    def to_array(self):
        """Unpack into an (n_rows, n_cols) uint8 array of 0/1."""
        n, m, mu = self.n_rows, self.n_cols, self.n_word_cols
        if not n or not mu:
            return np.zeros((n, m), dtype=np.uint8)
        le = np.ascontiguousarray(self.words.T).astype(f"<u{self.word_bits // 8}", copy=False)
        bits = np.unpackbits(le.view(np.uint8).reshape(n, -1), axis=1, bitorder="little")
        return bits[:, :m]

    def transpose(self):
        return BitMatrix.from_array(self.to_array().T, self.word_bits)

    @property
    def T(self):
        return self.transpose()

    # --- Arithmetic ---

    def __xor__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        if self.shape != other.shape or self.word_bits != other.word_bits:
            raise ShapeError(
                f"Cannot add a {self.shape} matrix (b={self.word_bits}) "
                f"and a {other.shape} matrix (b={other.word_bits})."
            )
        out = self.copy()
        out.words ^= other.words
        return out

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        if self.word_bits == other.word_bits:
            return bool(np.array_equal(self.words, other.words))
        return bool(np.array_equal(self.to_array(), other.to_array()))

    def any(self):
        return bool(self.words.any())

    def __repr__(self):
        return f"BitMatrix({self.n_rows}x{self.n_cols}, b={self.word_bits})"

    def __str__(self):
        return "\n".join("".join("1" if v else "0" for v in row) for row in self.to_array())


@dataclass(frozen=True, eq=False)
class RowPermutation:
    """Row permutation P acting as (P A)[i] = A[perm[i]]."""

    perm: np.ndarray

    def __post_init__(self):
        perm = np.asarray(self.perm, dtype=np.intp)
        if perm.ndim != 1 or not np.array_equal(np.sort(perm), np.arange(perm.size)):
            raise ValueError("A row permutation must be a bijection of 0..n-1.")
        perm.setflags(write=False)
        object.__setattr__(self, "perm", perm)

    @classmethod
    def identity(cls, n):
        return cls(np.arange(n))

    def __len__(self):
        return self.perm.size

    def __eq__(self, other):
        if not isinstance(other, RowPermutation):
            return NotImplemented
        return bool(np.array_equal(self.perm, other.perm))

    __hash__ = None

    def apply(self, A):
        return A.permute_rows(self.perm)

    def inverse(self):
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(self.perm.size)
        return RowPermutation(inv)

    def as_matrix(self, word_bits=DEFAULT_WORD_BITS):
        n = self.perm.size
        bits = np.zeros((n, n), dtype=np.uint8)
        bits[np.arange(n), self.perm] = 1
        return BitMatrix.from_array(bits, word_bits)


def _rows_to_bits(rows):
    parsed = []
    for row in rows:
        if isinstance(row, str):
            if set(row) - {"0", "1"}:
                raise ValueError(f"Row {row!r} may only contain '0' and '1'.")
            row = [ch == "1" for ch in row]
        parsed.append([int(v) for v in row])
    widths = {len(r) for r in parsed}
    if len(widths) > 1:
        raise ShapeError(f"Rows must all have the same length, got lengths {sorted(widths)}.")
    return parsed, widths.pop() if widths else 0


def pack(rows, word_bits=DEFAULT_WORD_BITS):
    """Pack a list of equal-length bit rows (sequences of 0/1 or '0'/'1' strings)."""
    parsed, m = _rows_to_bits(rows)
    bits = np.array(parsed, dtype=np.uint8).reshape(len(parsed), m)
    return BitMatrix.from_array(bits, word_bits)


def pack_words(rows, word_bits):
    """
    Integer grid of the packing layout for any positive word size.

    Word (i, q) is sum(a[i][q*b + k] * 2**k), with columns past the last
    one treated as zero.
    """
    if word_bits < 1:
        raise ValueError("Word size must be positive.")
    parsed, m = _rows_to_bits(rows)
    mu = n_word_cols(m, word_bits)
    grid = []
    for row in parsed:
        words = []
        for q in range(mu):
            chunk = row[q * word_bits:(q + 1) * word_bits]
            words.append(sum(bit << k for k, bit in enumerate(chunk)))
        grid.append(words)
    return grid


def storage_sequence(grid):
    """Words of an integer grid in storage order: word-column by word-column."""
    if not grid:
        return []
    return [grid[i][q] for q in range(len(grid[0])) for i in range(len(grid))]
