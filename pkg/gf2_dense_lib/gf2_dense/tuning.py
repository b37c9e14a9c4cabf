# gf2_dense/tuning.py
"""
Closed-form cost model for the M4RM kernel and the Strassen switch point.

All costs are in abstract units of one b-bit XOR unless a CostModel scales
them. They ignore memory traffic, so they pick defaults rather than predict
wall-clock time.
"""
from pydantic import BaseModel, Field, model_validator

MAX_TABLE_SIZE = 16
RANK_REGIMES = ("full", "one")


def m4rm_cost(b, c, n):
    """C(b, c, n) = (b / c) * (2**c - 1 + n): build b/c tables, then n rows."""
    if c < 1:
        raise ValueError(f"Table size must be at least 1, got {c}.")
    return (b / c) * (2**c - 1 + n)


def m4rm_cost_splits(splits, n):
    """T + n*R for general group sizes: sum(2**l - 1) + n * K."""
    if not splits or min(splits) < 1:
        raise ValueError("Splits must be positive integers.")
    return sum(2**l - 1 for l in splits) + n * len(splits)


def optimal_table_size(b, n):
    """Integer c in 2..min(b, 16) minimizing C(b, c, n); ties go to the smaller c."""
    if n < 1:
        raise ValueError(f"Row count must be positive, got {n}.")
    top = min(b, MAX_TABLE_SIZE)
    if top < 2:
        return 1
    return min(range(2, top + 1), key=lambda c: (m4rm_cost(b, c, n), c))


def strassen_threshold(c):
    """Smallest n at which one Strassen level beats direct M4RM: 44c + 6(2**c - 1)."""
    if c < 1:
        raise ValueError(f"Table size must be at least 1, got {c}.")
    return 44 * c + 6 * (2**c - 1)


def mult_cost(n, b, c):
    """M(n): M4RM product of two n x n matrices, ceil(n/b)**2 kernel calls."""
    return (n * n * (2**c - 1) + n**3) / (b * c)


def strassen_cost(n, b, c, threshold=None):
    """S(n) = 11 n**2 / (2b) + 7 S(n/2), falling back to M(n) below the threshold."""
    if threshold is None:
        threshold = strassen_threshold(c)
    if n < threshold:
        return mult_cost(n, b, c)
    return 11 * n * n / (2 * b) + 7 * strassen_cost(n / 2, b, c, threshold)


def buildz_cost(n, m, b, popc_cost=1.0):
    """Pseudo-inverse construction over a whole factorization: m(5 + 8b) + m n popC."""
    return m * (5 + 8 * b) + m * n * popc_cost


def predicted_decomposition_cost(n, b, c, rank_regime="full"):
    """
    Leading term of the M4RM work of the block factorization (an estimate).

    Full rank: n**3 / (3bc). Rank one: n**3 / (2bc).
    """
    if rank_regime == "full":
        return n**3 / (3 * b * c)
    if rank_regime == "one":
        return n**3 / (2 * b * c)
    raise ValueError(f"Rank regime must be one of {RANK_REGIMES}, got {rank_regime!r}.")


class CostModel(BaseModel):
    b: int = Field(64, description="Word size in bits.")
    c: int = Field(8, description="M4RM table size.")
    xor_cost: float = Field(1.0, gt=0, description="Cost of one b-bit XOR.")
    popc_cost: float = Field(1.0, gt=0, description="Cost of one population count.")

    @model_validator(mode="after")
    def _check_table_size(self):
        if not 2 <= self.c <= self.b:
            raise ValueError(f"Table size must satisfy 2 <= c <= b, got c={self.c}, b={self.b}.")
        return self

    @property
    def table_cost(self):
        """T_c^b = (b/c)(2**c - 1) Xor_b."""
        return (self.b / self.c) * (2**self.c - 1) * self.xor_cost

    @property
    def row_cost(self):
        """R_c^b = (b/c) Xor_b."""
        return (self.b / self.c) * self.xor_cost

    @property
    def switch_point(self):
        return strassen_threshold(self.c)

    def m4rm(self, n):
        return self.table_cost + n * self.row_cost

    def multiply(self, n):
        return mult_cost(n, self.b, self.c) * self.xor_cost

    def strassen(self, n):
        return strassen_cost(n, self.b, self.c) * self.xor_cost

    def use_strassen(self, n):
        return n >= self.switch_point

    def build_z(self, n, m):
        return buildz_cost(n, m, self.b, self.popc_cost / self.xor_cost) * self.xor_cost

    def decomposition(self, n, rank_regime="full"):
        return predicted_decomposition_cost(n, self.b, self.c, rank_regime) * self.xor_cost
