import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def grid16():
    from dgzk import Grid

    return Grid(16, 16)


@pytest.fixture
def grid32():
    from dgzk import Grid

    return Grid(32, 32)
