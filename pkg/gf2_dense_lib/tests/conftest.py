import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from gf2_dense.packed_matrix import pack  # noqa: E402

EXAMPLE_ROWS = ["10111", "10001", "11010", "00111"]


@pytest.fixture
def example_rows():
    return list(EXAMPLE_ROWS)


@pytest.fixture
def example_matrix():
    return pack(EXAMPLE_ROWS, 8)
