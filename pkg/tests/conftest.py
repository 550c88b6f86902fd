from __future__ import annotations

import pytest

from adlv.enumeration import enumerate_charts
from adlv.suites import grid

SMALL_SHAPES = ((1, 2), (1, 3), (2, 2), (2, 3), (3, 2))


@pytest.fixture(scope="session")
def small_grid():
    return grid(2, SMALL_SHAPES)


@pytest.fixture(scope="session")
def grid_results(small_grid):
    return {mu: enumerate_charts(mu) for mu in small_grid}


@pytest.fixture(scope="session")
def grid_charts(grid_results):
    return [(mu, ext) for mu, res in grid_results.items() for ext in res.charts]
