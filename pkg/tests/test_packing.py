import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from respectcut.baselines import brute_force_min_cut
from respectcut.generators import cycle, two_cliques
from respectcut.graph import DisconnectedGraphError, Graph, IntGraph
from respectcut.packing import ParallelClass, pack, step_count, trees_at_rounds


def as_multigraph(g: Graph) -> IntGraph:
    return IntGraph(g.n, g.u.copy(), g.v.copy(), g.w.astype(np.int64), np.arange(g.m))


def naive_pack(n, u, v, cap, steps):
    """Round-by-round packing with one explicit load per parallel copy."""
    loads = [[0] * int(c) for c in cap]
    sequence = []
    trees: dict[tuple[int, ...], int] = {}
    rounds = calls = 0
    while True:
        order = sorted(range(len(u)), key=lambda e: (min(loads[e]), e))
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        tree = []
        for e in order:
            a, b = find(int(u[e])), find(int(v[e]))
            if a != b:
                parent[a] = b
                tree.append(e)
        calls += 1
        if any(min(loads[e]) + 1 > steps for e in tree):
            break
        for e in tree:
            k = loads[e].index(min(loads[e]))
            loads[e][k] += 1
        rounds += 1
        key = tuple(sorted(tree))
        trees[key] = trees.get(key, 0) + 1
        sequence.append(key)
    return rounds, calls, trees, loads, sequence


def test_step_count():
    assert step_count(1, 0.2) == 1
    assert step_count(4, 0.2) == math.ceil(75 * math.log(4))
    assert step_count(23, 0.2) == 236


def test_single_edge():
    g = Graph.from_edges(2, [(0, 1, 1)])
    p = pack(as_multigraph(g), 0.2)
    assert p.W == 1 and len(p) == 1
    assert p.tree_edges.tolist() == [[0]]
    assert p.is_feasible()


def test_four_cycle_frozen():
    p = pack(as_multigraph(cycle(4)), 0.2)
    assert p.steps == 104 and p.rounds == 138
    assert p.W == Fraction(69, 52)
    assert p.W >= Fraction(4, 5)
    assert p.is_feasible()
    assert p.mst_calls == 139 <= 150 * math.log(4) + 1


def test_two_k5_frozen():
    g, c = two_cliques(5, 3)
    h = as_multigraph(g)
    p = pack(h, 0.2)
    assert c == 3
    assert p.W == Fraction(301, 118)
    assert p.W >= Fraction(6, 5)
    assert p.is_feasible()
    assert p.mst_calls == 603 <= 225 * math.log(h.multi_edges) + 1


def test_disconnected_raises():
    h = IntGraph(4, np.array([0, 2]), np.array([1, 3]), np.array([1, 1]), np.arange(2))
    with pytest.raises(DisconnectedGraphError):
        pack(h)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([0.5, 0.8, 0.9]))
def test_jumps_reproduce_round_by_round(seed, eps):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    keep = [p for p in pairs if rng.random() < 0.6]
    keep += [(i, i + 1) for i in range(n - 1) if (i, i + 1) not in keep]
    cap = rng.integers(1, 6, size=len(keep))
    u = np.array([a for a, _ in keep])
    v = np.array([b for _, b in keep])
    h = IntGraph(n, u, v, cap, np.arange(len(keep)))
    p = pack(h, eps)
    rounds, calls, trees, loads, _ = naive_pack(n, u, v, cap, p.steps)
    assert (p.rounds, p.mst_calls) == (rounds, calls)
    got = {tuple(p.tree_edges[k].tolist()): int(p.tree_units[k]) for k in range(len(p))}
    assert got == trees
    for cls, copy_loads in zip(p.parallel_classes(), loads):
        hist = {Fraction(k, p.steps): copy_loads.count(k) for k in set(copy_loads)}
        assert cls.histogram() == hist


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_feasible_and_heavy(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 9))
    edges = [(i, (i + 1) % n, int(rng.integers(1, 4))) for i in range(n)]
    edges += [(int(a), int(b), int(rng.integers(1, 4))) for a, b in rng.integers(0, n, (n, 2)) if a != b]
    g = Graph.from_edges(n, edges)
    p = pack(as_multigraph(g), 0.2)
    c = brute_force_min_cut(g).value
    assert p.is_feasible()
    assert p.W >= Fraction(2, 5) * Fraction(c).limit_denominator()
    # every tree crosses every cut, so no packing outweighs c
    assert p.W <= c
    assert sum(p.tree_units) == p.rounds


def test_parallel_class_histogram():
    cls = ParallelClass(capacity=5, level=3, at_min=2, steps=10)
    assert cls.min_load == Fraction(3, 10)
    assert cls.histogram() == {Fraction(3, 10): 2, Fraction(4, 10): 3}


def test_keep_trees_false_keeps_counts():
    g, _ = two_cliques(4, 2)
    a = pack(as_multigraph(g), 0.3)
    b = pack(as_multigraph(g), 0.3, keep_trees=False)
    assert (a.rounds, a.mst_calls) == (b.rounds, b.mst_calls)
    assert len(b) == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_replay_returns_tree_of_each_round(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    keep = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)] * (n > 2)
    keep += [(a, b) for a in range(n) for b in range(a + 2, n) if rng.random() < 0.4 and (a, b) != (0, n - 1)]
    cap = rng.integers(1, 5, size=len(keep))
    u = np.array([a for a, _ in keep])
    v = np.array([b for _, b in keep])
    h = IntGraph(n, u, v, cap, np.arange(len(keep)))
    p = pack(h, 0.7, keep_trees=False)
    *_, sequence = naive_pack(n, u, v, cap, p.steps)
    offsets = rng.integers(0, p.rounds, size=25)
    rows, which = trees_at_rounds(p, offsets)
    for r, k in zip(offsets, which):
        assert tuple(rows[k].tolist()) == sequence[r]
    assert len(rows) <= len(offsets)


def test_replay_rejects_bad_offsets():
    p = pack(as_multigraph(cycle(4)), 0.5)
    with pytest.raises(ValueError):
        trees_at_rounds(p, [p.rounds])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_iterations_within_snapped_bound(seed):
    # rounds * delta = W <= c, so at most c * steps rounds plus the final call
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 9))
    edges = [(i, (i + 1) % n, int(rng.integers(1, 4))) for i in range(n)]
    edges += [(int(a), int(b), int(rng.integers(1, 4))) for a, b in rng.integers(0, n, (n, 2)) if a != b]
    g = Graph.from_edges(n, edges)
    p = pack(as_multigraph(g), 0.2)
    c = int(brute_force_min_cut(g).value)
    assert p.mst_calls <= c * p.steps + 1


def test_single_edge_counts():
    p = pack(as_multigraph(Graph.from_edges(2, [(0, 1, 1)])), 0.2)
    # ln m' = 0 would make the step infinite; it is clamped to one step
    assert (p.steps, p.rounds, p.mst_calls) == (1, 1, 2)
