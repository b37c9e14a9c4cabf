# gf2_dense/verify.py
"""
Invariant checks for a factorization P A = L U.

Each check returns an InvariantResult instead of raising, so a report can
list every violated invariant of one input at once.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from .decomposition import decompose
from .oracles import gauss_rank, naive_mult

logger = logging.getLogger(__name__)

VARIANTS = ("block", "recursive")


@dataclass(frozen=True)
class InvariantResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    label: str
    results: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    @property
    def failures(self):
        return [r for r in self.results if not r.passed]

    def lines(self):
        """One line per failed invariant."""
        return [f"{self.label}: {r.name} failed: {r.detail}" for r in self.failures]


def _check(name, ok, detail=""):
    return InvariantResult(name, bool(ok), "" if ok else detail)


def check_factorization(A, F, expected_rank=None):
    """Every invariant of LUFactors F for the input A."""
    n, m, b = A.n_rows, A.n_cols, A.word_bits
    r = F.rank
    results = []

    shapes_ok = F.L.shape == (n, r) and F.U.shape == (r, m) and len(F.P) == n
    results.append(_check(
        "shapes", shapes_ok,
        f"L is {F.L.shape}, U is {F.U.shape}, P has {len(F.P)} entries for a {n}x{m} input of rank {r}",
    ))
    if not shapes_ok:
        return results

    recomposed = naive_mult(F.L, F.U)
    permuted = F.permuted(A)
    if recomposed == permuted:
        results.append(_check("recomposition", True))
    else:
        diff = np.argwhere(recomposed.to_array() != permuted.to_array())
        i, j = diff[0]
        results.append(_check(
            "recomposition", False,
            f"L*U differs from P*A in {len(diff)} entries, first at ({i}, {j})",
        ))

    if expected_rank is None:
        expected_rank = gauss_rank(A)
    results.append(_check("rank", r == expected_rank, f"factorization rank {r}, oracle rank {expected_rank}"))

    Lb = F.L.to_array()
    diag = Lb[np.arange(r), np.arange(r)] if r else np.ones(0, dtype=np.uint8)
    results.append(_check("L unit diagonal", diag.all(), f"{int((diag == 0).sum())} zero diagonal entries"))
    upper = np.triu(Lb, 1)
    results.append(_check("L lower trapezoidal", not upper.any(), f"{int(upper.sum())} entries above the diagonal"))

    Ub = F.U.to_array()
    u_rank = gauss_rank(Ub)
    results.append(_check("U full rank", u_rank == r, f"U has rank {u_rank}, expected {r}"))

    staircase_ok, detail = True, ""
    for j, (off, rj) in enumerate(zip(F.block_offsets(), F.block_ranks)):
        if not rj:
            continue
        if F.U.words[:j, off:off + rj].any():
            staircase_ok, detail = False, f"block row {j} has bits left of word-column {j}"
            break
        if gauss_rank(Ub[off:off + rj, j * b:(j + 1) * b]) != rj:
            staircase_ok, detail = False, f"leading block of block row {j} is singular"
            break
    results.append(_check("U block staircase", staircase_ok, detail))

    mu = -(-m // b)
    results.append(_check(
        "block ranks", len(F.block_ranks) == mu,
        f"{len(F.block_ranks)} block ranks for {mu} word-columns",
    ))
    results.append(_check(
        "padding", F.L.padding_is_clean() and F.U.padding_is_clean(), "padding bits set in L or U",
    ))
    return results


def verify_matrix(A, variants=VARIANTS, label="input", c=None, **options):
    """
    Factor A with every variant and check the invariants of each result.

    ``options`` (min_cols, threshold) reach the recursive variant unchanged.
    """
    report = VerificationReport(label)
    expected = gauss_rank(A)
    for variant in variants:
        F = decompose(A, variant, c=c, **options)
        for res in check_factorization(A, F, expected):
            report.results.append(InvariantResult(f"{variant} {res.name}", res.passed, res.detail))
    logger.info("%s: %d checks, %d failed", label, len(report.results), len(report.failures))
    return report
