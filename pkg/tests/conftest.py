import numpy as np
import pytest

from phenostruct.catalog import register_required_entries


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(scope="session")
def catalog_size():
    return register_required_entries()
