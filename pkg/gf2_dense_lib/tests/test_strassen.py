import time

import pytest
from hypothesis import given, settings, strategies as st

from gf2_dense.errors import ContractError, ShapeError
from gf2_dense.oracles import naive_mult
from gf2_dense.packed_matrix import BitMatrix
from gf2_dense.rng import random_dense
from gf2_dense.strassen import matrix_xor, multiply, strassen_mult


def test_matrix_xor():
    A = random_dense(10, 20, 0.5, seed=1)
    assert not matrix_xor(A, A).any()
    with pytest.raises(ShapeError):
        matrix_xor(A, BitMatrix(10, 21))


def test_threshold_below_two_words_is_clamped():
    A = random_dense(40, 40, 0.5, seed=2, word_bits=8)
    B = random_dense(40, 40, 0.5, seed=3, word_bits=8)
    assert strassen_mult(A, B, threshold=1, c=3) == naive_mult(A, B)


def test_multiply_above_switch_point():
    A = random_dense(130, 140, 0.5, seed=4, word_bits=8)
    B = random_dense(140, 150, 0.5, seed=5, word_bits=8)
    assert multiply(A, B, c=2, threshold=106) == naive_mult(A, B)


def test_shape_mismatch():
    with pytest.raises(ShapeError):
        strassen_mult(BitMatrix(3, 4, 8), BitMatrix(5, 3, 8))


@settings(deadline=None, max_examples=40)
@given(
    n=st.integers(16, 120),
    k=st.integers(16, 120),
    m=st.integers(16, 120),
    b=st.sampled_from([8, 16]),
    seed=st.integers(0, 10**6),
)
def test_matches_naive_product(n, k, m, b, seed):
    A = random_dense(n, k, 0.5, seed=seed, word_bits=b)
    B = random_dense(k, m, 0.5, seed=seed + 1, word_bits=b)
    C = strassen_mult(A, B, threshold=2 * b, c=4)
    assert C == naive_mult(A, B)
    assert C.padding_is_clean()


@pytest.mark.slow
def test_many_shapes_up_to_1024():
    for trial in range(500):
        n, k, m = (17 + (trial * p) % 1008 for p in (37, 53, 71))
        A = random_dense(n, k, 0.5, seed=trial)
        B = random_dense(k, m, 0.5, seed=trial + 10**6)
        expected = naive_mult(A, B)
        assert strassen_mult(A, B, threshold=128) == expected
        if trial % 10 == 0:
            assert multiply(A, B) == expected


def test_table_size_out_of_range():
    A = random_dense(40, 40, 0.5, seed=6, word_bits=8)
    with pytest.raises(ContractError):
        strassen_mult(A, A, threshold=16, c=20)
    with pytest.raises(ContractError):
        multiply(A, A, c=40)


@settings(deadline=None, max_examples=10)
@given(
    sizes=st.tuples(*[st.integers(100, 200)] * 4),
    b=st.sampled_from([8, 16]),
    seed=st.integers(0, 10**6),
)
def test_product_is_associative(sizes, b, seed):
    n, k, l, m = sizes
    A = random_dense(n, k, 0.5, seed=seed, word_bits=b)
    B = random_dense(k, l, 0.5, seed=seed + 1, word_bits=b)
    C = random_dense(l, m, 0.5, seed=seed + 2, word_bits=b)
    left = strassen_mult(strassen_mult(A, B, threshold=4 * b, c=4), C, threshold=4 * b, c=4)
    right = strassen_mult(A, strassen_mult(B, C, threshold=4 * b, c=4), threshold=4 * b, c=4)
    assert left == right


def best_time(n, runs=3):
    A = random_dense(n, n, 0.5, seed=n)
    B = random_dense(n, n, 0.5, seed=n + 1)
    times = []
    for _ in range(runs):
        start = time.perf_counter()
        strassen_mult(A, B, threshold=512)
        times.append(time.perf_counter() - start)
    return min(times)


@pytest.mark.slow
def test_doubling_costs_less_than_eight_times():
    assert best_time(4096) / best_time(2048) < 8
