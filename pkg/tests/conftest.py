import numpy as np
import pytest

from margulis.config import preset_config

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def group():
    return preset_config().group()


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
