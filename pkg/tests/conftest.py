import io
from pathlib import Path

import networkx as nx
import numpy as np
import pytest

from bituner.graph.core import Graph, load_edge_list
from bituner.graph.generators import from_networkx
from bituner.ltm.thresholds import assign_thresholds, get_threshold_distribution

FIXTURES = Path(__file__).parent / "fixtures"


def parse(text: str, directed: bool = False) -> Graph:
    return load_edge_list(io.StringIO(text), directed)


def thresholds(g: Graph, descriptor: str = "fixed:0.5", seed: int = 0):
    return assign_thresholds(g, get_threshold_distribution(descriptor), seed)


def random_small_graph(rng: np.random.Generator, max_n: int = 12) -> Graph:
    """Mixed family of tiny graphs: directed ER, undirected ER, stars and paths."""
    n = int(rng.integers(2, max_n + 1))
    kind = int(rng.integers(4))
    if kind == 0:
        p = rng.uniform(0.1, 0.5)
        arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
        return Graph.from_arcs(n, arcs)
    if kind == 1:
        return from_networkx(nx.gnp_random_graph(n, rng.uniform(0.15, 0.6), seed=int(rng.integers(2**31))))
    if kind == 2:
        return from_networkx(nx.star_graph(n - 1))
    return from_networkx(nx.path_graph(n))


@pytest.fixture
def triangle_pendant() -> Graph:
    """Triangle A-B-C plus D hanging off A; ids A=0, B=1, C=2, D=3."""
    return parse("A B\nB C\nC A\nA D\n")


@pytest.fixture
def star() -> Graph:
    """Center 0 with five leaves."""
    return from_networkx(nx.star_graph(5))


@pytest.fixture
def path5() -> Graph:
    return from_networkx(nx.path_graph(5))


@pytest.fixture
def cycle6() -> Graph:
    return from_networkx(nx.cycle_graph(6))


@pytest.fixture
def complete4() -> Graph:
    return from_networkx(nx.complete_graph(4))


@pytest.fixture
def directed_path() -> Graph:
    """1 -> 2 -> 3 with ids 0, 1, 2."""
    return parse("1 2\n2 3\n", directed=True)
