import numpy as np
import pytest
from hypothesis import settings

from densest import Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def path3():
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def triangle():
    return Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def star():
    # center 0, leaves 1..3
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


def random_graph(n, p, seed):
    gen = np.random.default_rng(seed)
    iu, iv = np.triu_indices(n, 1)
    keep = gen.random(iu.size) < p
    return Graph.from_edges(n, np.stack([iu[keep], iv[keep]], axis=1))
