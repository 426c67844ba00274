import random
from itertools import combinations

import pytest
from hypothesis import strategies as st

from triedge.graph import Graph

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_graph(n, p, rng):
    return Graph.from_edges(n, [(i, j) for i, j in combinations(range(n), 2) if rng.random() < p])


def random_graph_with_edges(n, e, rng):
    pairs = list(combinations(range(n), 2))
    return Graph.from_edges(n, rng.sample(pairs, e))


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def efr_graph(n):
    """K_{ceil(n/2), floor(n/2)} plus one edge inside the larger side."""
    big = (n + 1) // 2
    edges = [(i, j) for i in range(big) for j in range(big, n)] + [(0, 1)]
    return Graph.from_edges(n, edges)


@pytest.fixture
def rng():
    return random.Random(0)
