import numpy as np
import pytest

from gf2_dense.decomposition import rank
from gf2_dense.oracles import gauss_rank
from gf2_dense.rng import XorShift64Star, random_dense, random_sparse_rows


def test_same_seed_same_matrix():
    assert random_dense(64, 130, 0.5, seed=1) == random_dense(64, 130, 0.5, seed=1)
    assert random_dense(64, 130, 0.5, seed=1) != random_dense(64, 130, 0.5, seed=2)


@pytest.mark.parametrize("density", [0.5, 0.1])
def test_matrix_does_not_depend_on_word_size(density):
    wide = random_dense(20, 100, density, seed=7, word_bits=64).to_array()
    for b in (8, 16, 32):
        assert np.array_equal(random_dense(20, 100, density, seed=7, word_bits=b).to_array(), wide)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_dense_half_density_is_close_to_full_rank(seed):
    A = random_dense(512, 512, 0.5, seed=seed)
    assert gauss_rank(A) >= 512 - 8


@pytest.mark.slow
@pytest.mark.parametrize("seed", [1, 2, 3, 4])
def test_large_dense_is_close_to_full_rank(seed):
    assert rank(random_dense(2048, 2048, 0.5, seed=seed)) >= 2048 - 8


def test_dense_bits_come_from_high_output_halves():
    gen = XorShift64Star(seed=6, lanes=3)
    first, second = gen.next_high(), gen.next_high()
    expected = first.astype(np.uint64) | (second.astype(np.uint64) << np.uint64(32))
    A = random_dense(3, 64, 0.5, seed=6)
    assert A.words[0].tolist() == expected.tolist()


def test_density_extremes():
    assert not random_dense(10, 70, 0.0, seed=3).any()
    ones = random_dense(10, 70, 1.0, seed=3, word_bits=32)
    assert ones.to_array().all()
    assert ones.padding_is_clean()


def test_density_is_roughly_respected():
    bits = random_dense(200, 200, 0.1, seed=5).to_array()
    assert 0.07 < bits.mean() < 0.13


def test_bad_density():
    with pytest.raises(ValueError):
        random_dense(4, 4, 1.5)


@pytest.mark.parametrize("ones", [0, 2, 17, 40, 90, 100])
def test_sparse_rows_have_exact_popcount(ones):
    A = random_sparse_rows(50, 100, ones, seed=11)
    assert A.to_array().sum(axis=1).tolist() == [ones] * 50


def test_sparse_rows_too_many_ones():
    with pytest.raises(ValueError):
        random_sparse_rows(3, 5, 6)


def test_lanes_are_independent_streams():
    gen = XorShift64Star(seed=9, lanes=4)
    first = gen.next_words()
    assert len(set(first.tolist())) == 4
    assert (gen.next_below(10) < 10).all()
    u = gen.next_uniform()
    assert ((u >= 0) & (u < 1)).all()
