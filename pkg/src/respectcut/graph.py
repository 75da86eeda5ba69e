"""Undirected weighted graphs, the text file format, and cut utilities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._accel import kernel

# 100 * (w_max / w_min) has to fit comfortably in an int64.
MAX_WEIGHT_RATIO = 2.0**40
DEFAULT_MULTIPLIER = 100


class GraphError(ValueError):
    """Base class for invalid graph input."""


class GraphFormatError(GraphError):
    """A line of a graph file does not follow the grammar."""


class VertexRangeError(GraphError):
    """An edge names a vertex outside ``1..n``."""


class NegativeWeightError(GraphError):
    """An edge carries a negative weight."""


class DisconnectedGraphError(GraphError):
    """The graph (after dropping self-loops) is not connected."""


class WeightRangeError(GraphError):
    """Weights are all zero, or too skewed to round into int64."""


class EmptySideError(ValueError):
    """A cut side is empty or contains every vertex."""


@kernel
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@kernel
def component_labels(n, u, v):
    """Label each vertex with the smallest vertex id of its component."""
    parent = np.arange(n)
    for k in range(u.shape[0]):
        a = _find(parent, u[k])
        b = _find(parent, v[k])
        if a != b:
            if a < b:
                parent[b] = a
            else:
                parent[a] = b
    labels = np.empty(n, dtype=np.int64)
    for x in range(n):
        labels[x] = _find(parent, x)
    return labels


def is_connected(n: int, u: np.ndarray, v: np.ndarray) -> bool:
    if n <= 1:
        return True
    return bool(np.all(component_labels(n, u, v) == 0))


def _merge_edges(n: int, u: np.ndarray, v: np.ndarray, w: np.ndarray, dtype):
    """Drop self-loops and sum parallel edges, keeping first-seen order."""
    keep = u != v
    u, v, w = u[keep], v[keep], w[keep]
    a = np.minimum(u, v)
    b = np.maximum(u, v)
    keys = a * np.int64(n) + b
    uniq, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
    merged = np.zeros(uniq.shape[0], dtype=dtype)
    np.add.at(merged, inverse, w)
    order = np.argsort(first, kind="stable")
    return a[first][order], b[first][order], merged[order]


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph with non-negative real weights.

    Edges are stored as parallel arrays ``u``, ``v``, ``w``; the edge id is the
    array index. Use :meth:`from_edges` to build one from raw input, which
    merges parallel edges, drops self-loops, and validates connectivity.
    """

    n: int
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray

    @classmethod
    def from_edges(cls, n: int, edges, *, require_connected: bool = True) -> Graph:
        arr = list(edges)
        u = np.array([int(e[0]) for e in arr], dtype=np.int64)
        v = np.array([int(e[1]) for e in arr], dtype=np.int64)
        w = np.array([float(e[2]) for e in arr], dtype=np.float64)
        return cls.from_arrays(n, u, v, w, require_connected=require_connected)

    @classmethod
    def from_arrays(cls, n, u, v, w, *, require_connected: bool = True) -> Graph:
        n = int(n)
        if n < 1:
            raise GraphFormatError(f"vertex count must be positive, got {n}")
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        w = np.asarray(w, dtype=np.float64)
        if u.size and (u.min() < 0 or v.min() < 0 or u.max() >= n or v.max() >= n):
            raise VertexRangeError(f"edge endpoint outside 0..{n - 1}")
        if not np.all(np.isfinite(w)):
            raise GraphFormatError("edge weights must be finite")
        if np.any(w < 0):
            raise NegativeWeightError("edge weights must be non-negative")
        u, v, w = _merge_edges(n, u, v, w, np.float64)
        if require_connected and not is_connected(n, u, v):
            raise DisconnectedGraphError("graph is not connected")
        for arr in (u, v, w):
            arr.setflags(write=False)
        return cls(n, u, v, w)

    @property
    def m(self) -> int:
        return int(self.u.shape[0])

    @cached_property
    def total_weight(self) -> float:
        return float(self.w.sum())

    @cached_property
    def is_integral(self) -> bool:
        return bool(np.all(self.w == np.floor(self.w))) and self.total_weight < 2.0**52

    @cached_property
    def degree_weights(self) -> np.ndarray:
        out = np.zeros(self.n)
        np.add.at(out, self.u, self.w)
        np.add.at(out, self.v, self.w)
        return out

    def edges(self) -> list[tuple[int, int, float]]:
        return list(zip(self.u.tolist(), self.v.tolist(), self.w.tolist()))


@dataclass(frozen=True, eq=False)
class IntGraph:
    """Integer-weighted view of a graph, read as a multigraph.

    ``edge_ids[k]`` is the id of the originating :class:`Graph` edge, so trees
    found here can be mapped back. Zero-weight edges are not stored.
    """

    n: int
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    edge_ids: np.ndarray

    @property
    def m(self) -> int:
        return int(self.u.shape[0])

    @property
    def multi_edges(self) -> int:
        """Edge count once every weight-w edge is expanded into w copies."""
        return int(self.w.sum())


@dataclass
class CutResult:
    """A cut, described by the side that does not contain vertex 0.

    ``tree_edges`` holds the 1 or 2 graph edge ids that the cut takes from the
    spanning tree it was found with (empty for the oracle algorithms).
    ``meta`` carries per-algorithm diagnostics such as operation counts.
    """

    value: float
    side: np.ndarray
    crossing: np.ndarray
    tree_edges: tuple[int, ...] = ()
    meta: dict = field(default_factory=dict)

    def side_vertices(self) -> list[int]:
        return np.flatnonzero(self.side).tolist()


def parse_graph(text: str) -> Graph:
    """Parse the ``p <n> <m>`` / ``<u> <v> <w>`` text format (1-indexed)."""
    header = None
    raw: list[tuple[int, int, float]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if header is None:
            if len(parts) != 3 or parts[0] != "p":
                raise GraphFormatError(f"line {lineno}: expected 'p <n> <m>'")
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad header counts") from None
            if header[0] < 1 or header[1] < 0:
                raise GraphFormatError(f"line {lineno}: bad header counts")
            continue
        if len(parts) != 3:
            raise GraphFormatError(f"line {lineno}: expected '<u> <v> <w>'")
        try:
            a, b, wt = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: malformed edge") from None
        if not math.isfinite(wt):
            raise GraphFormatError(f"line {lineno}: weight must be finite")
        n = header[0]
        if not (1 <= a <= n and 1 <= b <= n):
            raise VertexRangeError(f"line {lineno}: vertex out of range 1..{n}")
        if wt < 0:
            raise NegativeWeightError(f"line {lineno}: negative weight {wt}")
        raw.append((a - 1, b - 1, wt))
    if header is None:
        raise GraphFormatError("missing 'p <n> <m>' header")
    if len(raw) != header[1]:
        raise GraphFormatError(f"header announces {header[1]} edges, found {len(raw)}")
    return Graph.from_edges(header[0], raw)


def format_graph(g: Graph, comments: tuple[str, ...] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"p {g.n} {g.m}")
    for a, b, wt in g.edges():
        lines.append(f"{a + 1} {b + 1} {_fmt_weight(wt)}")
    return "\n".join(lines) + "\n"


def _fmt_weight(wt: float) -> str:
    if wt == int(wt) and abs(wt) < 2**53:
        return str(int(wt))
    return repr(wt)


def normalize_and_round(g: Graph, multiplier: int = DEFAULT_MULTIPLIER) -> IntGraph:
    """Scale so the lightest nonzero edge weighs ``multiplier``, then round.

    Rounding is half-up. Zero-weight edges are dropped from the result.
    """
    positive = g.w > 0
    if not np.any(positive):
        raise WeightRangeError("all edge weights are zero")
    wmin = g.w[positive].min()
    if g.w.max() / wmin > MAX_WEIGHT_RATIO:
        raise WeightRangeError(f"weight ratio exceeds {MAX_WEIGHT_RATIO:.0f}")
    ids = np.flatnonzero(positive)
    scaled = np.floor(multiplier * g.w[ids] / wmin + 0.5).astype(np.int64)
    return IntGraph(g.n, g.u[ids].copy(), g.v[ids].copy(), scaled, ids.astype(np.int64))


def _as_side(n: int, side) -> np.ndarray:
    arr = np.asarray(side)
    if arr.dtype != np.bool_:
        mask = np.zeros(n, dtype=bool)
        mask[arr.astype(np.int64)] = True
        arr = mask
    if arr.shape != (n,):
        raise ValueError(f"side must have length {n}")
    count = int(arr.sum())
    if count == 0 or count == n:
        raise EmptySideError("side must be a nonempty proper vertex subset")
    return arr


def crossing_edges(g: Graph, side) -> np.ndarray:
    s = _as_side(g.n, side)
    return np.flatnonzero(s[g.u] != s[g.v])


def cut_weight(g: Graph, side) -> float:
    """Total weight of edges with exactly one endpoint in ``side``.

    ``side`` is a boolean mask of length n or a collection of vertex ids.
    """
    s = _as_side(g.n, side)
    return float(g.w[s[g.u] != s[g.v]].sum())


def canonical_side(side: np.ndarray) -> np.ndarray:
    """Return the side of the bipartition that excludes vertex 0."""
    side = np.asarray(side, dtype=bool)
    return ~side if side[0] else side.copy()


def make_cut(g: Graph, side, tree_edges: tuple[int, ...] = (), **meta) -> CutResult:
    s = canonical_side(_as_side(g.n, side))
    crossing = np.flatnonzero(s[g.u] != s[g.v])
    return CutResult(float(g.w[crossing].sum()), s, crossing, tuple(tree_edges), dict(meta))


def upper_bound_u(g: IntGraph, *, spanning_tree_bound: bool = False) -> int:
    """An integer upper bound on the minimum cut of ``g``.

    By default the smallest weighted vertex degree. With
    ``spanning_tree_bound`` the bound is ``n**2 * w`` where ``w`` is the
    lightest edge of a maximum spanning tree; it stays within O(log n)
    halvings of the true value whatever the weight skew.
    """
    if spanning_tree_bound:
        from .spanning_tree import kruskal_order

        order = np.lexsort((np.arange(g.m), -g.w))
        chosen = kruskal_order(g.n, g.u, g.v, order)
        return int(g.n) ** 2 * int(g.w[chosen].min())
    deg = np.zeros(g.n, dtype=np.int64)
    np.add.at(deg, g.u, g.w)
    np.add.at(deg, g.v, g.w)
    return int(deg.min())
