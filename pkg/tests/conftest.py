import random

import pytest

from trainalg.groups import pair_preset


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def glo():
    return pair_preset("GL_R/O")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
