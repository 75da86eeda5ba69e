import numpy as np
import pytest

from respectcut.graph import Graph
from respectcut.spanning_tree import RootedTree, kruskal_order


def random_connected_graph(
    rng: np.random.Generator, n: int, m: int, *, integer: bool = True, lo: float = 1, hi: float = 100
) -> Graph:
    """Random spanning tree plus up to ``m - (n - 1)`` extra random pairs."""
    perm = rng.permutation(n)
    edges = {}
    for i in range(1, n):
        a, b = int(perm[i]), int(perm[rng.integers(0, i)])
        edges[(min(a, b), max(a, b))] = None
    target = min(m, n * (n - 1) // 2)
    while len(edges) < target:
        a, b = (int(x) for x in rng.integers(0, n, size=2))
        if a != b:
            edges[(min(a, b), max(a, b))] = None
    k = len(edges)
    if integer:
        w = rng.integers(int(lo), int(hi) + 1, size=k).astype(float)
    else:
        w = np.round(rng.uniform(lo, hi, size=k), 4)
    return Graph.from_edges(n, [(a, b, float(x)) for (a, b), x in zip(edges, w)])


def random_spanning_tree(g: Graph, rng: np.random.Generator) -> RootedTree:
    """Uniformly shuffled Kruskal: an arbitrary spanning tree of ``g``."""
    ids = kruskal_order(g.n, g.u, g.v, rng.permutation(g.m))
    return RootedTree.from_edge_ids(g.n, g.u, g.v, g.w, ids)


def random_tree(rng: np.random.Generator, n: int) -> RootedTree:
    """Random recursive tree on n vertices with unit weights."""
    u = np.arange(1, n, dtype=np.int64)
    v = np.array([rng.integers(0, i) for i in range(1, n)], dtype=np.int64)
    return RootedTree.from_edge_ids(n, u, v, np.ones(n - 1), np.arange(n - 1))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
