# gf2_dense/__init__.py
from .system import GF2System
from .packed_matrix import BitMatrix, RowPermutation, pack, pack_words, storage_sequence
from .rng import random_dense, random_sparse_rows
from .matrix_io import read_matrix, write_matrix
from .m4rm import M4rmTables, build_tables, mult_acc, m4rm_mult
from .strassen import matrix_xor, multiply, strassen_mult
from .pivoting import PivotRecord, build_z, compute_y, incremental_inverse_update
from .decomposition import LUFactors, decompose, decompose_block, decompose_recursive, forward_substitute, rank
from .linsolve import null_space, solve
from .tuning import CostModel, m4rm_cost, optimal_table_size, predicted_decomposition_cost, strassen_threshold
from .errors import ContractError, FormatError, GF2Error, InadmissibleRowError, ShapeError

__all__ = [
    'GF2System', 'BitMatrix', 'RowPermutation',
    'pack', 'pack_words', 'storage_sequence',
    'random_dense', 'random_sparse_rows', 'read_matrix', 'write_matrix',
    'M4rmTables', 'build_tables', 'mult_acc', 'm4rm_mult',
    'matrix_xor', 'multiply', 'strassen_mult',
    'PivotRecord', 'build_z', 'compute_y', 'incremental_inverse_update',
    'LUFactors', 'decompose', 'decompose_block', 'decompose_recursive', 'forward_substitute', 'rank',
    'null_space', 'solve',
    'CostModel', 'm4rm_cost', 'optimal_table_size', 'predicted_decomposition_cost', 'strassen_threshold',
    'GF2Error', 'ShapeError', 'FormatError', 'ContractError', 'InadmissibleRowError',
]
