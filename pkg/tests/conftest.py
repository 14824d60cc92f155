import numpy as np
import pytest

from evtest.ranks import DataMatrix
from evtest.simulation import CopulaFamily, sample


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run Monte Carlo checks"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="Monte Carlo check, use --runslow to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def gumbel_sample():
    """100 draws of a Gumbel-Hougaard copula with tau = 0.5"""
    return sample(CopulaFamily("gumbel", 2.0), 100, seed=1)


@pytest.fixture
def three_points():
    return np.array([[0.25, 0.5], [0.5, 0.25], [0.75, 0.75]])


@pytest.fixture
def comonotone():
    return DataMatrix(np.column_stack([np.arange(1.0, 11.0), np.arange(1.0, 11.0)]))


@pytest.fixture
def write_csv(tmp_path):
    def write(content, name="data.csv"):
        path = tmp_path / name
        path.write_text(content)
        return path

    return write
