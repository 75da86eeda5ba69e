"""Minimum spanning trees, rooted trees and the heavy-light edge order.

Tree edges are named by the id of the graph edge they came from. Inside a
rooted tree every non-root vertex ``x`` owns the edge to its parent, and the
heavy-light order places that edge at ``position[x] = index[x] - 1`` where
``index`` is a heavy-child-first preorder. Each heavy path (the light edge
into its head plus the heavy edges below) is then one contiguous run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._accel import kernel
from .graph import DisconnectedGraphError, Graph, _find


@kernel
def _kruskal(n, u, v, order):
    parent = np.arange(n)
    chosen = np.empty(max(n - 1, 0), dtype=np.int64)
    count = 0
    for t in range(order.shape[0]):
        if count == n - 1:
            break
        e = order[t]
        a = _find(parent, u[e])
        b = _find(parent, v[e])
        if a != b:
            parent[a] = b
            chosen[count] = e
            count += 1
    return chosen, count


def kruskal_order(n: int, u: np.ndarray, v: np.ndarray, order: np.ndarray) -> np.ndarray:
    """Scan edges in ``order`` and keep those joining two components."""
    chosen, count = _kruskal(n, u, v, np.asarray(order, dtype=np.int64))
    if count != n - 1:
        raise DisconnectedGraphError("edges do not span all vertices")
    return chosen


@kernel
def _root_tree(n, u, v, ids, root):
    m = ids.shape[0]
    deg = np.zeros(n + 1, dtype=np.int64)
    for k in range(m):
        deg[u[ids[k]] + 1] += 1
        deg[v[ids[k]] + 1] += 1
    for x in range(n):
        deg[x + 1] += deg[x]
    fill = deg[:n].copy()
    nbr = np.empty(2 * m, dtype=np.int64)
    via = np.empty(2 * m, dtype=np.int64)
    for k in range(m):
        e = ids[k]
        a = u[e]
        b = v[e]
        nbr[fill[a]] = b
        via[fill[a]] = e
        fill[a] += 1
        nbr[fill[b]] = a
        via[fill[b]] = e
        fill[b] += 1
    parent = np.full(n, -1, dtype=np.int64)
    parent_edge = np.full(n, -1, dtype=np.int64)
    depth = np.zeros(n, dtype=np.int64)
    bfs = np.empty(n, dtype=np.int64)
    seen = np.zeros(n, dtype=np.bool_)
    bfs[0] = root
    seen[root] = True
    head = 0
    tail = 1
    while head < tail:
        x = bfs[head]
        head += 1
        for s in range(deg[x], deg[x + 1]):
            y = nbr[s]
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                parent_edge[y] = via[s]
                depth[y] = depth[x] + 1
                bfs[tail] = y
                tail += 1
    size = np.ones(n, dtype=np.int64)
    for t in range(tail - 1, 0, -1):
        x = bfs[t]
        size[parent[x]] += size[x]
    return parent, parent_edge, depth, size, tail


@dataclass(frozen=True, eq=False)
class RootedTree:
    """A spanning tree rooted at ``root``; per-vertex arrays, root entries -1/0."""

    n: int
    root: int
    parent: np.ndarray
    parent_edge: np.ndarray
    depth: np.ndarray
    subtree_size: np.ndarray
    edge_weight: np.ndarray

    @classmethod
    def from_edge_ids(cls, n, u, v, w, ids, root: int = 0) -> RootedTree:
        ids = np.asarray(ids, dtype=np.int64)
        if ids.shape[0] != n - 1:
            raise ValueError(f"a spanning tree on {n} vertices needs {n - 1} edges")
        parent, parent_edge, depth, size, reached = _root_tree(n, u, v, ids, root)
        if reached != n:
            raise DisconnectedGraphError("tree edges do not span all vertices")
        weight = np.zeros(n)
        nonroot = parent_edge >= 0
        weight[nonroot] = np.asarray(w, dtype=np.float64)[parent_edge[nonroot]]
        return cls(n, root, parent, parent_edge, depth, size, weight)

    @property
    def edge_ids(self) -> np.ndarray:
        """Sorted ids of the n-1 tree edges."""
        return np.sort(self.parent_edge[self.parent_edge >= 0])


def spanning_tree(g: Graph, ids, root: int = 0) -> RootedTree:
    """Root the spanning tree of ``g`` made of edges ``ids``."""
    return RootedTree.from_edge_ids(g.n, g.u, g.v, g.w, ids, root)


def minimum_spanning_tree(n: int, u, v, load, weights=None) -> RootedTree:
    """MST under ``load``; equal loads are broken by smaller edge id.

    ``weights`` (defaulting to ``load``) are what the returned tree records
    as its edge weights.
    """
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    load = np.asarray(load)
    order = np.lexsort((np.arange(u.shape[0]), load))
    ids = kruskal_order(n, u, v, order)
    return RootedTree.from_edge_ids(n, u, v, load if weights is None else weights, ids)


@kernel
def _heavy_light(n, parent, size, root):
    # children in increasing vertex id, as CSR
    start = np.zeros(n + 1, dtype=np.int64)
    for x in range(n):
        if parent[x] >= 0:
            start[parent[x] + 1] += 1
    for x in range(n):
        start[x + 1] += start[x]
    fill = start[:n].copy()
    kids = np.empty(max(n - 1, 0), dtype=np.int64)
    for x in range(n):
        p = parent[x]
        if p >= 0:
            kids[fill[p]] = x
            fill[p] += 1
    heavy = np.full(n, -1, dtype=np.int64)
    for x in range(n):
        best = -1
        for s in range(start[x], start[x + 1]):
            c = kids[s]
            if best < 0 or size[c] > size[best]:
                best = c
        heavy[x] = best
    index = np.empty(n, dtype=np.int64)
    head = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    stack[0] = root
    head[root] = root
    top = 1
    counter = 0
    while top > 0:
        top -= 1
        x = stack[top]
        index[x] = counter
        counter += 1
        # light children pushed in descending id so the smallest pops first,
        # heavy child last so it is visited immediately
        for s in range(start[x + 1] - 1, start[x] - 1, -1):
            c = kids[s]
            if c != heavy[x]:
                head[c] = c
                stack[top] = c
                top += 1
        if heavy[x] >= 0:
            head[heavy[x]] = head[x]
            stack[top] = heavy[x]
            top += 1
    return index, head


@kernel
def _raw_intervals(a, b, head, parent, depth, index, lo, hi):
    cnt = 0
    while head[a] != head[b]:
        if depth[head[a]] < depth[head[b]]:
            a, b = b, a
        lo[cnt] = index[head[a]] - 1
        hi[cnt] = index[a] - 1
        cnt += 1
        a = parent[head[a]]
    if a != b:
        if depth[a] > depth[b]:
            a, b = b, a
        lo[cnt] = index[a]
        hi[cnt] = index[b] - 1
        cnt += 1
    return cnt


@kernel
def _sorted_intervals(a, b, head, parent, depth, index, lo, hi):
    """Path intervals sorted by position with touching runs merged."""
    cnt = _raw_intervals(a, b, head, parent, depth, index, lo, hi)
    for s in range(1, cnt):
        x = lo[s]
        y = hi[s]
        t = s - 1
        while t >= 0 and lo[t] > x:
            lo[t + 1] = lo[t]
            hi[t + 1] = hi[t]
            t -= 1
        lo[t + 1] = x
        hi[t + 1] = y
    out = 0
    for s in range(cnt):
        if out > 0 and lo[s] == hi[out - 1] + 1:
            hi[out - 1] = hi[s]
        else:
            lo[out] = lo[s]
            hi[out] = hi[s]
            out += 1
    return out


def interval_capacity(n: int) -> int:
    """Buffer size that always holds the intervals of one path query."""
    return 2 * max(1, math.ceil(math.log2(max(n, 2)))) + 2


@kernel
def _all_intervals(pu, pv, head, parent, depth, index, width):
    k = pu.shape[0]
    ptr = np.zeros(k + 1, dtype=np.int64)
    lo = np.empty(k * width, dtype=np.int64)
    hi = np.empty(k * width, dtype=np.int64)
    blo = np.empty(width, dtype=np.int64)
    bhi = np.empty(width, dtype=np.int64)
    total = 0
    for q in range(k):
        cnt = _sorted_intervals(pu[q], pv[q], head, parent, depth, index, blo, bhi)
        for s in range(cnt):
            lo[total] = blo[s]
            hi[total] = bhi[s]
            total += 1
        ptr[q + 1] = total
    return ptr, lo[:total].copy(), hi[:total].copy()


@dataclass(frozen=True, eq=False)
class HldIndex:
    """Heavy-light edge order of a rooted tree.

    ``order[i]`` is the graph edge id at position i and ``order_vertex[i]``
    the child endpoint owning it; ``position`` is the inverse (per vertex, -1
    at the root). Heavy path ``k`` spans positions ``path_span[k]``
    (inclusive) and hangs from vertex ``path_head[k]``.
    """

    tree: RootedTree
    index: np.ndarray
    head: np.ndarray
    position: np.ndarray
    order: np.ndarray
    order_vertex: np.ndarray
    heavy_path_id: np.ndarray
    path_span: np.ndarray
    path_head: np.ndarray

    @property
    def size(self) -> int:
        return self.tree.n - 1

    def edge_weights(self) -> np.ndarray:
        """Tree edge weights listed in heavy-light order."""
        return self.tree.edge_weight[self.order_vertex]

    def intervals_of(self, pu: np.ndarray, pv: np.ndarray):
        """CSR (ptr, lo, hi) of path intervals for many vertex pairs at once."""
        t = self.tree
        return _all_intervals(
            np.asarray(pu, dtype=np.int64),
            np.asarray(pv, dtype=np.int64),
            self.head,
            t.parent,
            t.depth,
            self.index,
            interval_capacity(t.n),
        )


def decompose(t: RootedTree) -> HldIndex:
    """Heavy-light decomposition; heavy child = largest subtree, ties to smaller id."""
    index, head = _heavy_light(t.n, t.parent, t.subtree_size, t.root)
    order_vertex = np.empty(t.n - 1, dtype=np.int64)
    nonroot = np.flatnonzero(t.parent >= 0)
    position = np.full(t.n, -1, dtype=np.int64)
    position[nonroot] = index[nonroot] - 1
    order_vertex[position[nonroot]] = nonroot
    order = t.parent_edge[order_vertex]
    heads_in_order = head[order_vertex]
    new_path = np.ones(t.n - 1, dtype=bool)
    new_path[1:] = heads_in_order[1:] != heads_in_order[:-1]
    heavy_path_id = np.cumsum(new_path) - 1
    starts = np.flatnonzero(new_path)
    ends = np.append(starts[1:] - 1, t.n - 2)
    path_span = np.stack([starts, ends], axis=1) if t.n > 1 else np.empty((0, 2), np.int64)
    path_head = heads_in_order[starts]
    return HldIndex(t, index, head, position, order, order_vertex, heavy_path_id, path_span, path_head)


def path_intervals(h: HldIndex, u: int, v: int) -> list[tuple[int, int]]:
    """Inclusive position ranges covering the u-v tree path, sorted, merged."""
    if u == v:
        return []
    t = h.tree
    width = interval_capacity(t.n)
    lo = np.empty(width, dtype=np.int64)
    hi = np.empty(width, dtype=np.int64)
    cnt = _sorted_intervals(int(u), int(v), h.head, t.parent, t.depth, h.index, lo, hi)
    return list(zip(lo[:cnt].tolist(), hi[:cnt].tolist()))


def naive_path_edges(t: RootedTree, u: int, v: int) -> set[int]:
    """Graph edge ids on the u-v path, by walking parent pointers."""
    out: set[int] = set()
    a, b = int(u), int(v)
    while t.depth[a] > t.depth[b]:
        out.add(int(t.parent_edge[a]))
        a = int(t.parent[a])
    while t.depth[b] > t.depth[a]:
        out.add(int(t.parent_edge[b]))
        b = int(t.parent[b])
    while a != b:
        out.add(int(t.parent_edge[a]))
        out.add(int(t.parent_edge[b]))
        a = int(t.parent[a])
        b = int(t.parent[b])
    return out
