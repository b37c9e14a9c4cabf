# gf2_dense/bench_cli.py
"""
Command-line harness: generate seeded matrices, time the factorizations,
verify their invariants, print ranks and calibrate the M4RM kernels.

    gf2-bench gen    --n 1024 --density 0.5 --seed 1 --out A.txt
    gf2-bench gen    --n 1024 --per-row-ones 2..40 --out sweep/
    gf2-bench bench  --n 256 --n 512 --variant both --reps 10 --out times.csv
    gf2-bench verify --n 256 --m 300 --count 100
    gf2-bench rank   --in A.txt
    gf2-bench calibrate --n 1024 --reps 20 --out kernels.csv
"""
import argparse
import csv
import logging
import sys
import time
from pathlib import Path
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from .decomposition import decompose, rank
from .errors import GF2Error
from .m4rm import default_splits, m4rm_mult, mult_acc_words, tables_from_rows
from .matrix_io import read_matrix, write_matrix
from .packed_matrix import WORD_DTYPES, BitMatrix
from .rng import random_dense, random_sparse_rows
from .tuning import MAX_TABLE_SIZE, optimal_table_size, predicted_decomposition_cost
from .verify import VARIANTS, verify_matrix

logger = logging.getLogger(__name__)

CSV_HEADER = ("n", "b", "c", "variant", "time_ms", "rank")
LARGE_SIZE = 16384
EXTENSIONS = {"text": ".txt", "binary": ".f2mx"}
CALIBRATION_HEADER = (
    "b", "c", "xor_ns", "ratio", "table_us", "row_us", "product_us",
    "norm_table_us", "norm_row_us", "norm_product_us",
)
CALIBRATION_TOP = 10
LINEAR_SIZES = tuple(2**k for k in range(10, 15))
XOR_BITS = 2**18


class BenchConfig(BaseModel):
    sizes: List[int] = Field(default_factory=lambda: [256])
    m: Optional[int] = Field(None, gt=0, description="Column count; square when omitted.")
    word_bits: Literal[8, 16, 32, 64] = 64
    table_size: Optional[int] = Field(None, ge=2, le=MAX_TABLE_SIZE, description="None picks c from the cost model.")
    variant: Literal["block", "recursive", "both"] = "both"
    density: float = Field(0.5, ge=0.0, le=1.0)
    per_row_ones: Optional[List[int]] = None
    seed: int = Field(0, ge=0)
    repetitions: int = Field(10, ge=1)
    output: Optional[Path] = None
    fmt: Literal["text", "binary"] = "text"
    count: int = Field(1, ge=1)
    input: Optional[Path] = None
    allow_large: bool = False

    @field_validator("sizes")
    @classmethod
    def _positive_sizes(cls, sizes):
        if not sizes:
            raise ValueError("At least one size is required.")
        if min(sizes) < 1:
            raise ValueError(f"Sizes must be positive, got {sizes}.")
        return sizes

    @field_validator("per_row_ones")
    @classmethod
    def _non_negative_ones(cls, counts):
        if counts is not None and (not counts or min(counts) < 0):
            raise ValueError("Ones per row must be non-negative.")
        return counts

    @model_validator(mode="after")
    def _check_limits(self):
        largest = max(self.sizes + [self.m or 0])
        if largest > LARGE_SIZE and not self.allow_large:
            raise ValueError(f"Size {largest} exceeds {LARGE_SIZE}; pass --allow-large to run it.")
        if self.table_size is not None and self.table_size > self.word_bits:
            raise ValueError(f"Table size {self.table_size} exceeds the word size {self.word_bits}.")
        if self.per_row_ones and max(self.per_row_ones) > min(self.cols(n) for n in self.sizes):
            raise ValueError("More ones per row than columns.")
        return self

    def cols(self, n):
        return self.m or n

    @property
    def variants(self):
        return VARIANTS if self.variant == "both" else (self.variant,)

    def table_size_for(self, n):
        return self.table_size or optimal_table_size(self.word_bits, n)


def word_size_ratio(xor_b, xor_2b):
    """2 Xor_b / Xor_2b; above 1 the doubled word size does the same work faster."""
    return 2 * xor_b / xor_2b


def generate(config, n, ones=None, seed=None):
    seed = config.seed if seed is None else seed
    m = config.cols(n)
    if ones is not None:
        return random_sparse_rows(n, m, ones, seed, config.word_bits)
    return random_dense(n, m, config.density, seed, config.word_bits)


def _targets(config):
    """(n, ones, file name) for every matrix gen writes."""
    ext = EXTENSIONS[config.fmt]
    out = []
    for n in config.sizes:
        if config.per_row_ones is None:
            out.append((n, None, f"dense_n{n}{ext}"))
        else:
            out.extend((n, i, f"sparse_n{n}_i{i}{ext}") for i in config.per_row_ones)
    return out


def cmd_gen(config, stream=None):
    """Write the configured matrices; returns the paths written."""
    targets = _targets(config)
    if len(targets) == 1 and (config.output is None or not config.output.is_dir()):
        n, ones, _ = targets[0]
        A = generate(config, n, ones)
        if config.output is None:
            write_matrix(A, stream or sys.stdout, config.fmt)
            return []
        write_matrix(A, config.output, config.fmt)
        return [config.output]
    if config.output is None:
        raise ValueError("Writing several matrices needs --out DIR.")
    config.output.mkdir(parents=True, exist_ok=True)
    written = []
    for n, ones, name in targets:
        path = config.output / name
        write_matrix(generate(config, n, ones), path, config.fmt)
        written.append(path)
    logger.info("wrote %d matrices to %s", len(written), config.output)
    return written


def _write_csv(config, header, rows, stream=None):
    def emit(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)

    if config.output is not None:
        with open(config.output, "w", newline="") as fh:
            emit(fh)
    else:
        emit(stream or sys.stdout)


def time_decomposition(A, variant, c, repetitions, timer=time.perf_counter):
    """Minimum wall time in milliseconds over the repetitions, and the rank."""
    best, r = None, None
    for _ in range(repetitions):
        start = timer()
        F = decompose(A, variant, c=c)
        elapsed = (timer() - start) * 1000.0
        best = elapsed if best is None else min(best, elapsed)
        r = F.rank
    return best, r


def cmd_bench(config, stream=None, timer=time.perf_counter):
    """Time every (size, sweep point, variant); writes CSV and returns the rows."""
    rows = []
    sweep = config.per_row_ones if config.per_row_ones is not None else [None]
    for n in config.sizes:
        c = config.table_size_for(n)
        for ones in sweep:
            A = generate(config, n, ones)
            for variant in config.variants:
                ms, r = time_decomposition(A, variant, c, config.repetitions, timer)
                regime = "one" if r <= 1 else "full"
                logger.info(
                    "n=%d ones=%s %s: %.3f ms, rank %d, predicted leading cost %.3g (%s rank)",
                    n, ones, variant, ms, r, predicted_decomposition_cost(n, config.word_bits, c, regime), regime,
                )
                rows.append((n, config.word_bits, c, variant, f"{ms:.3f}", r))

    _write_csv(config, CSV_HEADER, rows, stream)
    return rows


def _best(fn, repetitions, timer):
    """Minimum wall time of fn() in seconds."""
    best = None
    for _ in range(repetitions):
        start = timer()
        fn()
        elapsed = timer() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def xor_time(b, repetitions, timer=time.perf_counter, seed=0):
    """Xor_b: seconds per b-bit word XOR, measured over a fixed bit volume."""
    words = XOR_BITS // b
    x = random_dense(1, XOR_BITS, 0.5, seed, b).words[:, 0].copy()
    y = random_dense(1, XOR_BITS, 0.5, seed + 1, b).words[:, 0].copy()
    return _best(lambda: np.bitwise_xor(x, y, out=x), repetitions, timer) / words


def kernel_times(b, c, n, repetitions, timer=time.perf_counter, seed=0):
    """
    Seconds for one table build from b rows (T_c^b), per row of n applied
    rows (R_c^b) and for one b x b product.
    """
    B = random_dense(b, b, 0.5, seed, b)
    A = random_dense(n, b, 0.5, seed + 1, b)
    splits = default_splits(b, c)
    tables = tables_from_rows(B.words, splits)
    acc = BitMatrix(n, b, b)
    table = _best(lambda: tables_from_rows(B.words, splits), repetitions, timer)
    rows = _best(lambda: mult_acc_words(acc.words, A.words[0], splits, tables), repetitions, timer) / n
    square = A.row_slice(0, b) if n >= b else random_dense(b, b, 0.5, seed + 2, b)
    product = _best(lambda: m4rm_mult(square, B, c), repetitions, timer)
    return table, rows, product


def log_linear_growth(b, sizes, repetitions, timer=time.perf_counter, seed=0):
    """Time n x b by b x b products over ``sizes`` and log the per-row cost."""
    c = optimal_table_size(b, max(sizes))
    B = random_dense(b, b, 0.5, seed, b)
    per_row = []
    for n in sizes:
        A = random_dense(n, b, 0.5, seed + 1, b)
        per_row.append(_best(lambda: m4rm_mult(A, B, c), repetitions, timer) / n)
        logger.info("m4rm n=%d b=%d c=%d: %.3f us per row", n, b, c, per_row[-1] * 1e6)
    spread = max(per_row) / min(per_row) if min(per_row) > 0 else float("inf")
    logger.info("m4rm per-row time spread over n=%d..%d: %.2f (1.0 is linear)", sizes[0], sizes[-1], spread)
    return per_row


def cmd_calibrate(config, stream=None, timer=time.perf_counter, linear_sizes=LINEAR_SIZES):
    """
    Measure Xor_b, T_c^b, R_c^b and b x b products for every word size.

    Normalized columns scale each time to the widest word: tables and rows
    by (64/b)**2, products by (64/b)**3. ``ratio`` is 2 Xor_b / Xor_2b.
    """
    word_sizes = sorted(WORD_DTYPES)
    widest = word_sizes[-1]
    n = config.sizes[0]
    xor = {b: xor_time(b, config.repetitions, timer, config.seed) for b in word_sizes}
    rows = []
    for b in word_sizes:
        ratio = f"{word_size_ratio(xor[b], xor[2 * b]):.3f}" if 2 * b in xor else ""
        if ratio:
            logger.info("word size %d vs %d: 2 Xor_b / Xor_2b = %s", b, 2 * b, ratio)
        scale = widest / b
        table_sizes = [config.table_size] if config.table_size else range(2, min(b, CALIBRATION_TOP) + 1)
        for c in table_sizes:
            if c > b:
                continue
            table, per_row, product = kernel_times(b, c, n, config.repetitions, timer, config.seed)
            rows.append((
                b, c, f"{xor[b] * 1e9:.4f}", ratio,
                f"{table * 1e6:.3f}", f"{per_row * 1e6:.5f}", f"{product * 1e6:.3f}",
                f"{table * 1e6 * scale**2:.3f}", f"{per_row * 1e6 * scale**2:.5f}", f"{product * 1e6 * scale**3:.3f}",
            ))
    log_linear_growth(config.word_bits, list(linear_sizes), config.repetitions, timer, config.seed)

    _write_csv(config, CALIBRATION_HEADER, rows, stream)
    return rows


def cmd_verify(config, stream=None):
    """Run the invariant suite; returns 0 when everything holds, 1 otherwise."""
    stream = stream or sys.stdout
    if config.input is not None:
        instances = [(str(config.input), read_matrix(config.input, word_bits=config.word_bits))]
    else:
        n = config.sizes[0]
        ones = config.per_row_ones[0] if config.per_row_ones else None
        instances = (
            (f"seed {seed}", generate(config, n, ones, seed))
            for seed in range(config.seed, config.seed + config.count)
        )
    checked, failed = 0, 0
    for label, A in instances:
        report = verify_matrix(A, config.variants, label, config.table_size)
        checked += 1
        if not report.passed:
            failed += 1
            for line in report.lines():
                print(line, file=stream)
    print(f"verified {checked} matrices: {'ok' if not failed else f'{failed} failed'}", file=stream)
    return 1 if failed else 0


def cmd_rank(config, stream=None):
    if config.input is None:
        raise ValueError("rank needs --in PATH.")
    A = read_matrix(config.input, word_bits=config.word_bits)
    r = rank(A, "block" if config.variant == "both" else config.variant, config.table_size)
    print(r, file=stream or sys.stdout)
    return r


def _table_size_arg(text):
    if text == "auto":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or an integer, got {text!r}") from None
    if not 2 <= value <= MAX_TABLE_SIZE:
        raise argparse.ArgumentTypeError(f"table size must lie in 2..{MAX_TABLE_SIZE}")
    return value


def _ones_arg(text):
    """'K' or an inclusive range 'LO..HI'."""
    try:
        if ".." in text:
            lo, hi = (int(part) for part in text.split("..", 1))
            if lo > hi:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected K or LO..HI, got {text!r}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, action="append", dest="sizes", help="Row count; repeat for several sizes.")
    common.add_argument("--m", type=int, default=None, help="Column count (default: square).")
    common.add_argument("--b", type=int, default=64, dest="word_bits", help="Word size: 8, 16, 32 or 64.")
    common.add_argument("--c", type=_table_size_arg, default=None, dest="table_size", help="Table size: auto or 2..16.")
    common.add_argument("--variant", choices=["block", "recursive", "both"], default="both")
    common.add_argument("--density", type=float, default=0.5)
    common.add_argument("--per-row-ones", type=_ones_arg, default=None, help="Ones per row: K or LO..HI.")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--reps", type=int, default=10, dest="repetitions")
    common.add_argument("--out", type=Path, default=None, dest="output")
    common.add_argument("--format", choices=["text", "binary"], default="text", dest="fmt")
    common.add_argument("--count", type=int, default=1, help="verify: number of seeds to sweep.")
    common.add_argument("--in", type=Path, default=None, dest="input", help="Input matrix file.")
    common.add_argument("--allow-large", action="store_true", help=f"Permit sizes above {LARGE_SIZE}.")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="gf2-bench", description="Dense GF(2) factorization benchmarks.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("gen", parents=[common], help="Generate seeded random matrices.")
    sub.add_parser("bench", parents=[common], help="Time the factorizations, CSV output.")
    sub.add_parser("verify", parents=[common], help="Check factorization invariants.")
    sub.add_parser("rank", parents=[common], help="Print the rank of a matrix file.")
    sub.add_parser("calibrate", parents=[common], help="Time the M4RM kernels per word and table size, CSV output.")
    return parser


COMMANDS = {
    "gen": cmd_gen, "bench": cmd_bench, "verify": cmd_verify, "rank": cmd_rank, "calibrate": cmd_calibrate,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if not args.verbose else logging.INFO if args.verbose == 1 else logging.DEBUG,
        format="%(levelname)s %(name)s: %(message)s",
    )
    options = vars(args)
    command = options.pop("command")
    options.pop("verbose")
    if options["sizes"] is None:
        options.pop("sizes")
    try:
        config = BenchConfig(**options)
    except ValidationError as exc:
        print(f"gf2-bench: invalid configuration:\n{exc}", file=sys.stderr)
        return 2

    try:
        result = COMMANDS[command](config)
    except (GF2Error, ValueError, OSError) as exc:
        print(f"gf2-bench {command}: {exc}", file=sys.stderr)
        return 2
    return result if command == "verify" else 0


if __name__ == "__main__":
    sys.exit(main())
