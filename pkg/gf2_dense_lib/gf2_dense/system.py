# gf2_dense/system.py
import logging

from .decomposition import decompose, rank
from .linsolve import null_space, solve
from .packed_matrix import DEFAULT_WORD_BITS, pack, word_dtype
from .strassen import multiply
from .tuning import optimal_table_size, strassen_threshold
from .verify import VARIANTS, verify_matrix

logger = logging.getLogger(__name__)


class GF2System:
    def __init__(self, word_bits=DEFAULT_WORD_BITS, table_size=None, variant="recursive",
                 min_cols=None, strassen_threshold=None):
        """
        Configured entry point to the dense GF(2) routines.

        Args:
            word_bits (int): Word size b, one of 8, 16, 32, 64.
            table_size (int): M4RM table size c; None picks it per call from the cost model.
            variant (str): 'block' or 'recursive' factorization.
            min_cols (int): Column count at which the recursive variant stops splitting (default 4*b).
            strassen_threshold (int): Size at which products switch to Strassen (default from c).
        """
        word_dtype(word_bits)
        if variant not in VARIANTS:
            raise ValueError(f"Variant must be one of {VARIANTS}, got {variant!r}.")
        if table_size is not None and not 2 <= table_size <= min(word_bits, 16):
            raise ValueError(f"Table size must lie in 2..{min(word_bits, 16)}, got {table_size}.")
        self.word_bits = word_bits
        self.table_size = table_size
        self.variant = variant
        self.min_cols = min_cols
        self.strassen_threshold = strassen_threshold

    def table_size_for(self, n):
        """c for an operand with n rows."""
        if self.table_size is not None:
            return self.table_size
        return optimal_table_size(self.word_bits, max(n, 1))

    def switch_point(self, n):
        if self.strassen_threshold is not None:
            return self.strassen_threshold
        return strassen_threshold(self.table_size_for(n))

    def matrix(self, rows):
        """
        Pack bit rows with this system's word size.

        Args:
            rows (list): Rows as '0'/'1' strings or sequences of 0/1.

        Returns:
            BitMatrix
        """
        return pack(rows, self.word_bits)

    def _options(self, A):
        if self.variant == "block":
            return {"c": self.table_size_for(A.n_rows)}
        return {
            "c": self.table_size_for(A.n_rows),
            "min_cols": self.min_cols,
            "threshold": self.strassen_threshold,
        }

    def decompose(self, A):
        """
        Factor P A = L U.

        Returns:
            LUFactors: permutation, L, U and the rank of every column block.
        """
        F = decompose(A, self.variant, **self._options(A))
        logger.debug("decompose %dx%d (%s): block ranks %s", A.n_rows, A.n_cols, self.variant, F.block_ranks)
        return F

    def rank(self, A):
        return rank(A, self.variant, self.table_size_for(max(A.n_rows, A.n_cols)))

    def multiply(self, A, B):
        return multiply(A, B, self.table_size_for(A.n_rows), self.strassen_threshold)

    def null_space(self, A):
        return null_space(A, self.variant, self.table_size_for(A.n_rows))

    def solve(self, A, rhs):
        """
        Solve A x = rhs.

        Returns:
            numpy.ndarray or None: a 0/1 solution with free variables zero, None if inconsistent.
        """
        return solve(A, rhs, self.variant, self.table_size_for(A.n_rows))

    def verify(self, A, label="input"):
        """Run the invariant suite on both variants with this system's c, min_cols and threshold."""
        return verify_matrix(
            A, VARIANTS, label, self.table_size_for(A.n_rows),
            min_cols=self.min_cols, threshold=self.strassen_threshold,
        )
