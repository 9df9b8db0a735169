import itertools

import numpy as np
import pytest


def brute_rank(dense):
    """Rank over GF(2) as cols - log2 |kernel|, kernel found by enumerating all x."""
    a = np.asarray(dense, dtype=np.int64) % 2
    cols = a.shape[1]
    kernel = 0
    for bits in itertools.product((0, 1), repeat=cols):
        if not (a @ np.array(bits) % 2).any():
            kernel += 1
    return cols - (kernel.bit_length() - 1)


def brute_walsh(table):
    size = len(table)
    return [sum(int(table[z]) * (-1) ** bin(A & z).count("1") for z in range(size)) for A in range(size)]


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
