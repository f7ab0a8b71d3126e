import math

import numpy as np
import pytest

from gfreg import GridSpec, build_frame


@pytest.fixture(scope="session")
def grid():
    return GridSpec(4096, 16.0 * math.pi)


@pytest.fixture(scope="session")
def small_grid():
    return GridSpec(1024, 4.0 * math.pi)


@pytest.fixture(scope="session")
def frame(grid):
    return build_frame(grid)


@pytest.fixture(scope="session")
def eps(grid):
    return grid.default_scales()


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    from test_acceptance import ACCEPTANCE_KEY

    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(lines):
        terminalreporter.write_line(line)
