import itertools
import random

import pytest
from hypothesis import settings

from groupcrypt.graphs import SimplicialGraph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def all_graphs(n):
    """Every labelled graph on ``n`` vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield SimplicialGraph.from_edges(n, [e for k, e in enumerate(pairs) if mask >> k & 1])


def graph_corpus(max_n, count, seed=0):
    """Exhaustive for n <= 4, then random graphs of every density up to ``max_n``."""
    out = []
    for n in range(0, 5):
        out.extend(all_graphs(n))
    rng = random.Random(seed)
    while len(out) < count:
        n = rng.randint(5, max_n)
        out.append(SimplicialGraph.random(rng, n, rng.choice((0.2, 0.4, 0.5, 0.6, 0.8))))
    return out


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def edge_graph():
    return SimplicialGraph.from_edges(2, [(0, 1)])


@pytest.fixture
def free2():
    return SimplicialGraph(2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
