# gf2_dense/rng.py
"""
Seeded random matrices that are bit-identical across runs and platforms.

The generator is xorshift64* with one independent lane per matrix row:

    x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;  out = x * 0x2545F4914F6CDD1D  (mod 2**64)

Lane ``i`` starts from ``splitmix64(seed + (i + 1) * 0x9E3779B97F4A7C15)``
(a zero state is replaced by the golden-ratio constant). Only the top 32
bits of ``out`` become matrix bits, ``out >> 32`` filling 32 consecutive
columns: the low output bits are nearly GF(2)-linear in the lane state,
so using them makes large dense matrices rank-deficient. Every formula
is plain 64-bit unsigned arithmetic, so any language can reproduce the
matrices.
"""
import numpy as np

from .packed_matrix import DEFAULT_WORD_BITS, BitMatrix, low_mask, word_dtype

_U64 = np.uint64
_GOLDEN = _U64(0x9E3779B97F4A7C15)
_MIX1 = _U64(0xBF58476D1CE4E5B9)
_MIX2 = _U64(0x94D049BB133111EB)
_STAR = _U64(0x2545F4914F6CDD1D)


def splitmix64(values):
    z = np.asarray(values, dtype=_U64).copy()
    z ^= z >> _U64(30)
    z *= _MIX1
    z ^= z >> _U64(27)
    z *= _MIX2
    z ^= z >> _U64(31)
    return z


class XorShift64Star:
    """Vector of independent xorshift64* streams, one per lane."""

    def __init__(self, seed, lanes):
        base = _U64(int(seed) % 2**64)
        with np.errstate(over="ignore"):
            offsets = (np.arange(lanes, dtype=_U64) + _U64(1)) * _GOLDEN
            state = splitmix64(offsets + base)
        state[state == 0] = _GOLDEN
        self.state = state

    def next_words(self):
        """Advance every lane and return its 64-bit output."""
        x = self.state
        x ^= x >> _U64(12)
        x ^= x << _U64(25)
        x ^= x >> _U64(27)
        return x * _STAR

    def next_high(self):
        """Top 32 bits of each output; the low bits are close to linear in the state."""
        return (self.next_words() >> _U64(32)).astype(np.uint32)

    def next_uniform(self):
        """Uniform doubles in [0, 1) from the top 53 bits of each output."""
        return (self.next_words() >> _U64(11)).astype(np.float64) * 2.0**-53

    def next_below(self, bound):
        """Integers in [0, bound) by multiply-shift reduction of the top 32 bits."""
        if not 0 < bound <= 2**32:
            raise ValueError(f"Bound must be in 1..2**32, got {bound}.")
        return ((self.next_words() >> _U64(32)) * _U64(bound)) >> _U64(32)


def _words_from_u64(draws, n_cols, word_bits):
    """Reinterpret (n, g) 64-bit draws as (mu, n) b-bit words, column order kept."""
    n = draws.shape[0]
    le = np.ascontiguousarray(draws).astype("<u8", copy=False)
    words = le.view(f"<u{word_bits // 8}").reshape(n, -1)
    mu = -(-n_cols // word_bits)
    return words[:, :mu].T


def random_dense(n, m, density=0.5, seed=0, word_bits=DEFAULT_WORD_BITS):
    """
    Random n x m matrix whose entries are 1 with probability ``density``.

    Density 1/2 takes the top 32 bits of each output as 32 consecutive
    columns, the first of two draws filling the lower half of every 64
    columns; any other
    density draws one uniform per entry, column by column. In both cases the
    matrix does not depend on the word size.
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"Density must lie in [0, 1], got {density}.")
    dtype = word_dtype(word_bits)
    out = BitMatrix(n, m, word_bits)
    if not n or not m or density == 0.0:
        return out
    if density == 1.0:
        out.words[...] = low_mask(dtype, word_bits)
        return out.clear_padding()
    rng = XorShift64Star(seed, n)
    with np.errstate(over="ignore"):
        if density == 0.5:
            groups = -(-m // 64)
            halves = np.empty((n, 2 * groups), dtype="<u4")
            for h in range(2 * groups):
                halves[:, h] = rng.next_high()
            out.words[...] = _words_from_u64(halves.view("<u8"), m, word_bits)
            return out.clear_padding()
        bits = np.empty((n, m), dtype=np.uint8)
        for j in range(m):
            bits[:, j] = rng.next_uniform() < density
    return BitMatrix.from_array(bits, word_bits)


def random_sparse_rows(n, m, per_row, seed=0, word_bits=DEFAULT_WORD_BITS):
    """
    Random n x m matrix with exactly ``per_row`` ones in every row.

    Columns are drawn uniformly and duplicates are redrawn. When more than
    half of a row is ones, the zero positions are drawn instead.
    """
    if per_row < 0 or per_row > m:
        raise ValueError(f"Cannot place {per_row} distinct ones in a row of {m} columns.")
    complement = per_row > m // 2
    target = m - per_row if complement else per_row
    bits = np.zeros((n, m), dtype=np.uint8)
    if n and target:
        rng = XorShift64Star(seed, n)
        count = np.zeros(n, dtype=np.intp)
        rows = np.arange(n)
        with np.errstate(over="ignore"):
            while True:
                active = count < target
                if not active.any():
                    break
                cols = rng.next_below(m).astype(np.intp)
                fresh = active & (bits[rows, cols] == 0)
                bits[rows[fresh], cols[fresh]] = 1
                count += fresh
    if complement:
        bits ^= 1
    return BitMatrix.from_array(bits, word_bits)
