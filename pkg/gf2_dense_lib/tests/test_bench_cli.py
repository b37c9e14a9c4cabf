import csv
import io
import itertools
import logging
import time
from pathlib import Path

import numpy as np
import pytest

import gf2_dense
from gf2_dense.bench_cli import (
    CALIBRATION_HEADER,
    BenchConfig,
    cmd_bench,
    cmd_calibrate,
    cmd_verify,
    main,
    time_decomposition,
    word_size_ratio,
)
from gf2_dense.matrix_io import read_matrix, write_matrix
from gf2_dense.packed_matrix import BitMatrix
from gf2_dense.rng import random_dense, random_sparse_rows

EXAMPLE_FILE = Path(gf2_dense.__file__).parent / "data" / "example_4x5.txt"


def stub_timer(step=0.005):
    counter = itertools.count(step=step)
    return lambda: next(counter)


def test_rank_of_example_file(capsys):
    assert main(["rank", "--in", str(EXAMPLE_FILE)]) == 0
    assert capsys.readouterr().out.strip() == "4"


def test_rank_of_zero_and_identity_files(tmp_path, capsys):
    write_matrix(BitMatrix(12, 30), tmp_path / "zero.txt")
    write_matrix(BitMatrix.identity(33), tmp_path / "eye.f2mx", "binary")
    main(["rank", "--in", str(tmp_path / "zero.txt")])
    main(["rank", "--in", str(tmp_path / "eye.f2mx")])
    assert capsys.readouterr().out.split() == ["0", "33"]


@pytest.mark.parametrize("n, m", [(2**40, 1), (2**62, 2**62), (2**31, 64)])
def test_rank_rejects_header_beyond_payload(tmp_path, capsys, n, m):
    path = tmp_path / "bad.f2mx"
    path.write_bytes(b"F2MX" + np.array([n, m, 64], dtype="<u8").tobytes() + bytes(16))
    assert main(["rank", "--in", str(path)]) == 2
    assert "gf2-bench rank" in capsys.readouterr().err


def test_gen_is_deterministic(tmp_path):
    for name in ("a.txt", "b.txt"):
        assert main(["gen", "--n", "256", "--density", "0.5", "--seed", "1", "--out", str(tmp_path / name)]) == 0
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()


def test_gen_zero_density(tmp_path):
    main(["gen", "--n", "40", "--m", "70", "--density", "0", "--out", str(tmp_path / "z.txt")])
    A = read_matrix(tmp_path / "z.txt")
    assert A.shape == (40, 70) and not A.any()


def test_gen_sparse_sweep(tmp_path):
    out = tmp_path / "sweep"
    assert main(["gen", "--n", "64", "--per-row-ones", "2..40", "--seed", "3", "--out", str(out)]) == 0
    files = sorted(out.iterdir())
    assert len(files) == 39
    for i in (2, 17, 40):
        A = read_matrix(out / f"sparse_n64_i{i}.txt")
        assert A.to_array().sum(axis=1).tolist() == [i] * 64


def test_bench_csv_schema(tmp_path):
    path = tmp_path / "times.csv"
    assert main(["bench", "--n", "64", "--n", "96", "--reps", "2", "--out", str(path)]) == 0
    rows = list(csv.DictReader(path.open()))
    assert list(rows[0]) == ["n", "b", "c", "variant", "time_ms", "rank"]
    assert [(r["n"], r["variant"]) for r in rows] == [
        ("64", "block"), ("64", "recursive"), ("96", "block"), ("96", "recursive"),
    ]
    assert len({r["rank"] for r in rows if r["n"] == "64"}) == 1


def test_minimum_over_repetitions_with_stub_timer():
    A = random_dense(32, 32, 0.5, seed=2)
    one, r1 = time_decomposition(A, "block", 4, 1, stub_timer())
    three, r3 = time_decomposition(A, "block", 4, 3, stub_timer())
    assert one == pytest.approx(5.0) and three == pytest.approx(one)
    assert r1 == r3


def test_bench_sparse_sweep_rows():
    config = BenchConfig(sizes=[64], per_row_ones=list(range(2, 41)), variant="block", repetitions=1)
    out = io.StringIO()
    rows = cmd_bench(config, out, stub_timer())
    assert len(rows) == 39
    assert out.getvalue().splitlines()[0] == "n,b,c,variant,time_ms,rank"


def test_verify_generated_sweep():
    config = BenchConfig(sizes=[40], m=50, count=5, seed=7)
    out = io.StringIO()
    assert cmd_verify(config, out) == 0
    assert out.getvalue().strip() == "verified 5 matrices: ok"


def test_verify_identity_file(tmp_path):
    write_matrix(BitMatrix.identity(512), tmp_path / "eye.txt")
    assert main(["verify", "--in", str(tmp_path / "eye.txt")]) == 0


@pytest.mark.parametrize("argv", [
    ["bench", "--reps", "0"],
    ["bench", "--b", "12"],
    ["bench", "--n", "20000"],
    ["gen", "--n", "-3"],
    ["gen", "--per-row-ones", "9", "--n", "8"],
    ["rank"],
])
def test_usage_errors(argv):
    assert main(argv) == 2


@pytest.mark.parametrize("argv", [
    ["bench", "--c", "17"],
    ["bench", "--per-row-ones", "5..x"],
    ["explode"],
])
def test_argument_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_allow_large_flag():
    assert BenchConfig(sizes=[20000], allow_large=True).sizes == [20000]


def test_word_size_ratio():
    assert word_size_ratio(3.0, 4.0) == pytest.approx(1.5)


def test_calibrate_with_stub_timer(tmp_path, caplog):
    out = tmp_path / "kernels.csv"
    config = BenchConfig(sizes=[64], repetitions=1, output=out)
    with caplog.at_level(logging.INFO, logger="gf2_dense.bench_cli"):
        cmd_calibrate(config, timer=stub_timer(), linear_sizes=(64, 128, 256))
    with open(out, newline="") as fh:
        table = list(csv.reader(fh))
    assert tuple(table[0]) == CALIBRATION_HEADER
    word_sizes = [int(row[0]) for row in table[1:]]
    assert [word_sizes.count(b) for b in (8, 16, 32, 64)] == [7, 9, 9, 9]
    # Equal times over a fixed bit volume: Xor_b halves with b, so every ratio is 1.
    assert {row[0]: row[3] for row in table[1:]} == {"8": "1.000", "16": "1.000", "32": "1.000", "64": ""}
    first = table[1]
    assert float(first[9]) == pytest.approx(float(first[6]) * 8**3, rel=1e-3)
    assert float(first[7]) == pytest.approx(float(first[4]) * 8**2, rel=1e-3)
    assert "per-row time spread" in caplog.text


def test_calibrate_command_single_table_size(tmp_path):
    out = tmp_path / "kernels.csv"
    assert main(["calibrate", "--n", "64", "--reps", "1", "--c", "4", "--out", str(out)]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert [(row["b"], row["c"]) for row in rows] == [("8", "4"), ("16", "4"), ("32", "4"), ("64", "4")]
    assert all(float(row["product_us"]) > 0 for row in rows)


def kendall_tau(values):
    pairs = list(itertools.combinations(range(len(values)), 2))
    score = sum(np.sign(values[j] - values[i]) for i, j in pairs)
    return score / len(pairs)


def median_time(A, variant, runs):
    return float(np.median([time_decomposition(A, variant, None, 1)[0] for _ in range(runs)]))


@pytest.mark.slow
def test_recursive_scaling_is_subcubic():
    small = median_time(random_dense(4096, 4096, 0.5, seed=1), "recursive", 5)
    big_matrix = random_dense(8192, 8192, 0.5, seed=1)
    big = median_time(big_matrix, "recursive", 5)
    assert big / small <= 7.5
    assert big <= median_time(big_matrix, "block", 1) * 1.05


@pytest.mark.slow
def test_sparse_matrices_are_cheaper():
    dense = time_decomposition(random_dense(4096, 4096, 0.5, seed=2), "recursive", None, 3)[0]
    times = [
        time_decomposition(random_sparse_rows(4096, 4096, i, seed=2), "recursive", None, 3)[0]
        for i in range(2, 41)
    ]
    assert times[0] <= dense / 2
    assert kendall_tau(times) >= 0.5
