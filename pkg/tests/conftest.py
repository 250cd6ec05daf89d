import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from symdyn.examples import dyck, even_shift, full_shift, golden_mean  # noqa: E402
from symdyn.language import Subshift  # noqa: E402

GOLDEN_MATRIX = [[1, 1], [1, 0]]


@pytest.fixture
def golden():
    return golden_mean()


@pytest.fixture
def even():
    return even_shift()


@pytest.fixture
def full2():
    return full_shift(2)


@pytest.fixture
def dyck2():
    return dyck(8)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def sft(matrix, symbols=None):
    return Subshift.from_matrix(matrix, symbols)
