"""Greedy weighted spanning-tree packing by repeated minimum spanning trees.

Every edge of weight ``w`` stands for ``w`` parallel unit-capacity copies.
Each round takes an MST with respect to the copies' loads and adds one step
``delta = 1/K`` to the load of the tree's copies; the run ends the first time
a copy would go past load 1. Loads are kept as integers (multiples of 1/K),
so the stopping test and the feasibility accounting are exact.

A class of parallel copies only ever holds two load levels, ``L`` and
``L + 1`` (the least-loaded copy is the one incremented), so its state is
``(L, copies still at L)``. While no class changes level the MST input is
identical and so is its output; the kernel applies such a run of identical
rounds in one step. Round counts are the ones the round-by-round procedure
would produce.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._accel import kernel
from .graph import DisconnectedGraphError, Graph, IntGraph
from .spanning_tree import RootedTree, _kruskal


@kernel
def _pack_kernel(n, u, v, cap, steps, mode, targets):
    """Greedy packing; ``mode`` 0 counts only, 1 records every tree, 2 records
    the trees that cover the sorted round offsets in ``targets``."""
    m = u.shape[0]
    level = np.zeros(m, dtype=np.int64)
    at_level = cap.copy()
    # edges sorted by (level, id); only bumped edges move, so re-merge them
    order = np.arange(m)
    spare = np.empty(m, dtype=np.int64)
    bumped = np.empty(max(n - 1, 1), dtype=np.int64)
    moved = np.zeros(m, dtype=np.bool_)
    width = max(n - 1, 1)
    buf = np.empty((16 if mode > 0 else 1, width), dtype=np.int64)
    units = np.zeros(buf.shape[0], dtype=np.int64)
    hit = np.full(targets.shape[0], -1, dtype=np.int64)
    tp = 0
    rows = 0
    in_prev = np.zeros(m, dtype=np.bool_)
    prev = np.empty(width, dtype=np.int64)
    rounds = 0
    mst_runs = 0
    connected = True
    while True:
        tree, cnt = _kruskal(n, u, v, order)
        mst_runs += 1
        if cnt != n - 1:
            connected = False
            break
        run = cap.max() + 1
        over = False
        for s in range(n - 1):
            e = tree[s]
            if level[e] + 1 > steps:
                over = True
            if at_level[e] < run:
                run = at_level[e]
        if over:
            break
        nb = 0
        for s in range(n - 1):
            e = tree[s]
            at_level[e] -= run
            if at_level[e] == 0:
                level[e] += 1
                at_level[e] = cap[e]
                bumped[nb] = e
                nb += 1
                moved[e] = True
        if nb > 0:
            _remerge(order, spare, bumped[:nb], moved, level, m)
        store = False
        if mode == 1:
            same = rows > 0
            if same:
                for s in range(n - 1):
                    if not in_prev[tree[s]]:
                        same = False
                        break
            if same:
                units[rows - 1] += run
            else:
                if rows > 0:
                    for s in range(n - 1):
                        in_prev[prev[s]] = False
                for s in range(n - 1):
                    in_prev[tree[s]] = True
                    prev[s] = tree[s]
                store = True
        elif mode == 2:
            while tp < targets.shape[0] and targets[tp] < rounds + run:
                hit[tp] = rows
                tp += 1
                store = True
        if store:
            if rows == buf.shape[0]:
                grown = np.empty((2 * rows, width), dtype=np.int64)
                grown[:rows] = buf
                buf = grown
                more = np.zeros(2 * rows, dtype=np.int64)
                more[:rows] = units
                units = more
            for s in range(n - 1):
                buf[rows, s] = tree[s]
            units[rows] = run
            rows += 1
        rounds += run
    return connected, rounds, mst_runs, buf[:rows].copy(), units[:rows].copy(), level, at_level, hit


@kernel
def _remerge(order, spare, bumped, moved, level, m):
    """Restore (level, id) order after the ``bumped`` edges went up a level."""
    keys = np.empty(bumped.shape[0], dtype=np.int64)
    for j in range(bumped.shape[0]):
        keys[j] = level[bumped[j]] * m + bumped[j]
    bumped[:] = bumped[np.argsort(keys)]
    k = 0
    for s in range(order.shape[0]):
        e = order[s]
        if not moved[e]:
            spare[k] = e
            k += 1
    rest = k
    i = 0
    j = 0
    out = 0
    while i < rest or j < bumped.shape[0]:
        if j >= bumped.shape[0]:
            order[out] = spare[i]
            i += 1
        elif i >= rest:
            order[out] = bumped[j]
            j += 1
        else:
            a = spare[i]
            b = bumped[j]
            if level[a] * m + a < level[b] * m + b:
                order[out] = a
                i += 1
            else:
                order[out] = b
                j += 1
        out += 1
    for j in range(bumped.shape[0]):
        moved[bumped[j]] = False


_NO_TARGETS = np.empty(0, dtype=np.int64)


def step_count(multi_edges: int, eps: float) -> int:
    """K with delta = 1/K: the smallest integer K >= 3 ln m' / eps^2 (at least 1)."""
    return max(1, math.ceil(3.0 * math.log(max(multi_edges, 1)) / (eps * eps)))


@dataclass(frozen=True)
class ParallelClass:
    """Load state of the parallel copies behind one multigraph edge.

    ``at_min`` copies sit at ``level / steps``, the rest one step higher.
    Only a least-loaded copy is offered to the MST.
    """

    capacity: int
    level: int
    at_min: int
    steps: int

    @property
    def min_load(self) -> Fraction:
        return Fraction(self.level, self.steps)

    def histogram(self) -> dict[Fraction, int]:
        hist = {self.min_load: self.at_min}
        if self.capacity > self.at_min:
            hist[Fraction(self.level + 1, self.steps)] = self.capacity - self.at_min
        return hist


@dataclass(frozen=True, eq=False)
class Packing:
    """A weighted multiset of spanning trees of ``graph``.

    ``tree_edges[k]`` lists the multigraph edge indices of distinct tree k
    (sorted) and ``tree_units[k]`` its weight in units of ``1/steps``.
    ``mst_calls`` counts MST invocations of the round-by-round procedure,
    including the final round whose tree is discarded; ``mst_runs`` counts
    the MSTs this implementation actually computed.
    """

    graph: IntGraph
    eps: float
    steps: int
    rounds: int
    mst_calls: int
    mst_runs: int
    tree_edges: np.ndarray
    tree_units: np.ndarray
    final_level: np.ndarray
    final_at_level: np.ndarray

    @property
    def delta(self) -> Fraction:
        return Fraction(1, self.steps)

    @property
    def W(self) -> Fraction:
        return Fraction(self.rounds, self.steps)

    @property
    def weight(self) -> float:
        return self.rounds / self.steps

    def __len__(self) -> int:
        return int(self.tree_units.shape[0])

    def tree_weight(self, k: int) -> Fraction:
        return Fraction(int(self.tree_units[k]), self.steps)

    def source_edge_ids(self, k: int) -> np.ndarray:
        """Ids, in the source :class:`Graph`, of the edges of tree ``k``."""
        return np.sort(self.graph.edge_ids[self.tree_edges[k]])

    def rooted_tree(self, k: int, g: Graph | None = None) -> RootedTree:
        """Tree ``k`` rooted at 0, with weights from ``g`` when given."""
        if g is None:
            h = self.graph
            return RootedTree.from_edge_ids(h.n, h.u, h.v, h.w, self.tree_edges[k])
        return RootedTree.from_edge_ids(g.n, g.u, g.v, g.w, self.source_edge_ids(k))

    @property
    def trees(self) -> list[tuple[RootedTree, Fraction]]:
        return [(self.rooted_tree(k), self.tree_weight(k)) for k in range(len(self))]

    def class_usage(self) -> np.ndarray:
        """Per multigraph edge: total weight of trees using it, in 1/steps units."""
        usage = np.zeros(self.graph.m, dtype=np.int64)
        for k in range(len(self)):
            usage[self.tree_edges[k]] += self.tree_units[k]
        return usage

    def is_feasible(self) -> bool:
        """Tree weight through every edge stays within its capacity."""
        return bool(np.all(self.class_usage() <= self.graph.w * self.steps))

    def parallel_classes(self) -> list[ParallelClass]:
        return [
            ParallelClass(int(c), int(lv), int(a), self.steps)
            for c, lv, a in zip(self.graph.w, self.final_level, self.final_at_level)
        ]


def pack(h: IntGraph, eps3: float = 0.2, *, keep_trees: bool = True) -> Packing:
    """Pack spanning trees into the multigraph ``h`` with accuracy ``eps3``.

    Raises :class:`DisconnectedGraphError` if ``h`` has no spanning tree.
    """
    if not 0.0 < eps3 < 1.0:
        raise ValueError("eps3 must lie in (0, 1)")
    cap = np.asarray(h.w, dtype=np.int64)
    if np.any(cap <= 0):
        raise ValueError("multigraph capacities must be positive")
    steps = step_count(h.multi_edges, eps3)
    if h.n == 1:
        empty = np.empty((0, 0), dtype=np.int64)
        return Packing(h, eps3, steps, 0, 0, 0, empty, np.empty(0, np.int64), cap * 0, cap)
    connected, rounds, runs, buf, units, level, at_level, _ = _pack_kernel(
        h.n, h.u, h.v, cap, steps, 1 if keep_trees else 0, _NO_TARGETS
    )
    if not connected:
        raise DisconnectedGraphError("multigraph has no spanning tree")
    rounds, runs = int(rounds), int(runs)
    if keep_trees and len(units):
        rows = np.sort(buf, axis=1)
        uniq, inverse = np.unique(rows, axis=0, return_inverse=True)
        merged = np.bincount(inverse.ravel(), weights=units, minlength=uniq.shape[0])
        buf, units = uniq, merged.astype(np.int64)
    return Packing(h, eps3, steps, rounds, rounds + 1, runs, buf, units, level, at_level)


def trees_at_rounds(p: Packing, offsets) -> tuple[np.ndarray, np.ndarray]:
    """Replay the packing behind ``p`` and return the trees used at the given rounds.

    ``offsets`` are round numbers in ``[0, p.rounds)``. Returns ``(rows,
    which)``: ``rows[k]`` holds multigraph edge indices (sorted) of a tree and
    ``which[i]`` the row used in round ``offsets[i]``. Memory stays
    proportional to the number of offsets, not to the length of the run.
    """
    offsets = np.asarray(offsets, dtype=np.int64)
    if offsets.size and (offsets.min() < 0 or offsets.max() >= p.rounds):
        raise ValueError("round offsets must lie in [0, rounds)")
    order = np.argsort(offsets, kind="stable")
    h = p.graph
    cap = np.asarray(h.w, dtype=np.int64)
    *_, buf, _, _, _, hit = _pack_kernel(h.n, h.u, h.v, cap, p.steps, 2, offsets[order])
    which = np.empty_like(hit)
    which[order] = hit
    return np.sort(buf, axis=1), which


def mst_call_count(p: Packing) -> int:
    return p.mst_calls
