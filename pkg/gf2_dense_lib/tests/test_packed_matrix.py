import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gf2_dense.errors import ShapeError
from gf2_dense.packed_matrix import (
    CACHE_LINE,
    BitMatrix,
    RowPermutation,
    pack,
    pack_words,
    parity,
    storage_sequence,
    word_dtype,
)


def test_example_packs_to_word_grid(example_matrix):
    assert example_matrix.words.tolist() == [[29, 17, 11, 28]]
    assert example_matrix.padding_is_clean()


def test_example_grid_for_three_bit_words(example_rows):
    grid = pack_words(example_rows, 3)
    assert grid == [[5, 3], [1, 2], [3, 1], [4, 3]]
    assert storage_sequence(grid) == [5, 1, 3, 4, 3, 2, 1, 3]


def test_leftmost_column_is_least_significant_bit():
    A = pack(["1" + "0" * 63, "0" * 63 + "1"], 64)
    assert int(A.words[0, 0]) == 1
    assert int(A.words[0, 1]) == 1 << 63


def test_ragged_rows_rejected():
    with pytest.raises(ShapeError):
        pack(["101", "10"])


def test_unsupported_word_size():
    with pytest.raises(ValueError):
        word_dtype(12)


def test_get_set_and_bounds():
    A = BitMatrix(3, 70, 64)
    A.set(2, 69, 1)
    assert A.get(2, 69) == 1
    assert int(A.words[1, 2]) == 1 << 5
    A.set(2, 69, 0)
    assert not A.any()
    with pytest.raises(IndexError):
        A.get(3, 0)
    with pytest.raises(IndexError):
        A.set(0, 70, 1)


def test_word_columns_are_cache_aligned():
    A = BitMatrix(5, 200, 32)
    for q in range(A.n_word_cols):
        assert A.words[q].ctypes.data % CACHE_LINE == 0


def test_row_swap_and_row_xor_range():
    A = pack(["1100", "0110", "0011"], 8)
    A.row_swap(0, 2)
    assert str(A) == "0011\n0110\n1100"
    A.row_xor_range(0, 1, 0, 1)
    assert str(A).splitlines()[0] == "0101"
    with pytest.raises(IndexError):
        A.row_xor_range(0, 1, 0, 2)


def test_transpose_example(example_matrix):
    T = example_matrix.transpose()
    assert T.shape == (5, 4)
    assert str(T) == "1110\n0010\n1001\n1011\n1101"
    assert T.transpose() == example_matrix


def test_identity_and_xor():
    I = BitMatrix.identity(70, 32)
    assert (I ^ I).any() is False
    assert I.to_array().tolist() == np.eye(70, dtype=np.uint8).tolist()
    with pytest.raises(ShapeError):
        I ^ BitMatrix(70, 71, 32)


def test_paste_at_unaligned_offset():
    dst = BitMatrix(4, 100, 8)
    src = pack(["111", "101"], 8)
    dst.paste(src, 1, 7)
    bits = dst.to_array()
    assert bits[1, 7:10].tolist() == [1, 1, 1]
    assert bits[2, 7:10].tolist() == [1, 0, 1]
    assert bits.sum() == 5


def test_col_slice_requires_word_boundary():
    A = pack(["1" * 20], 8)
    assert A.col_slice(8, 20).shape == (1, 12)
    with pytest.raises(ValueError):
        A.col_slice(3, 20)


def test_parity_of_words():
    words = np.array([0, 1, 3, 7, 0xFF, 0x80], dtype=np.uint8)
    assert parity(words).tolist() == [0, 1, 0, 1, 0, 1]


def test_row_permutation():
    A = pack(["100", "010", "001"], 8)
    P = RowPermutation([2, 0, 1])
    assert str(P.apply(A)) == "001\n100\n010"
    assert P.inverse().apply(P.apply(A)) == A
    assert P.as_matrix(8) == P.apply(BitMatrix.identity(3, 8))
    with pytest.raises(ValueError):
        RowPermutation([0, 0, 1])


@settings(deadline=None, max_examples=50)
@given(
    n=st.integers(0, 20),
    m=st.integers(0, 150),
    b=st.sampled_from([8, 16, 32, 64]),
    seed=st.integers(0, 2**32 - 1),
)
def test_array_conversion_keeps_padding_clean(n, m, b, seed):
    bits = np.random.default_rng(seed).integers(0, 2, size=(n, m), dtype=np.uint8)
    A = BitMatrix.from_array(bits, b)
    assert A.padding_is_clean()
    assert np.array_equal(A.to_array(), bits)
    assert A.words.shape == (-(-m // b), n)
