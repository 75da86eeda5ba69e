"""Minimum cuts that cut one or two edges of a given spanning tree.

Tree edges are swept in heavy-light order. For each non-tree edge the
positions on its tree path form a few contiguous runs, so as the sweep index
``i`` moves, the edge enters or leaves "the path contains e_i" only at run
boundaries. The 1-respecting sweep keeps one running sum. The 2-respecting
sweep keeps, for every other tree edge ``e_j``, the weight of non-tree edges
whose path holds exactly one of ``e_i``, ``e_j``, inside a
:class:`PathAggregator`-style segment tree, and asks for the best ``j``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._accel import kernel
from .graph import CutResult, Graph, component_labels, make_cut
from .path_aggregate import PathAggregator, _pull, seg_argmin, seg_build, seg_range_add
from .sampler import SamplerConfig, sample_packing
from .spanning_tree import HldIndex, RootedTree, decompose


@kernel
def _events(size, ptr, lo, hi):
    count = np.zeros(size + 1, dtype=np.int64)
    k = ptr.shape[0] - 1
    for q in range(k):
        for s in range(ptr[q], ptr[q + 1]):
            count[lo[s] + 1] += 1
            if hi[s] + 1 < size:
                count[hi[s] + 2] += 1
    for p in range(size):
        count[p + 1] += count[p]
    fill = count[:size].copy()
    edge = np.empty(count[size], dtype=np.int64)
    sign = np.empty(count[size], dtype=np.int64)
    for q in range(k):
        for s in range(ptr[q], ptr[q + 1]):
            edge[fill[lo[s]]] = q
            sign[fill[lo[s]]] = 1
            fill[lo[s]] += 1
            if hi[s] + 1 < size:
                edge[fill[hi[s] + 1]] = q
                sign[fill[hi[s] + 1]] = -1
                fill[hi[s] + 1] += 1
    return count, edge, sign


@dataclass(frozen=True, eq=False)
class TransitionSchedule:
    """Where each non-tree edge's path membership flips along the sweep.

    Non-tree edge ``k`` (graph edge ``nontree[k]``) lies on the path of
    positions ``lo[s]..hi[s]`` for ``s`` in ``ptr[k]:ptr[k+1]``. The same data
    is kept as an event table: at position ``p`` the events
    ``ev_edge[ev_ptr[p]:ev_ptr[p+1]]`` enter (+1) or leave (-1).
    """

    hld: HldIndex
    nontree: np.ndarray
    weight: np.ndarray
    ptr: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    ev_ptr: np.ndarray
    ev_edge: np.ndarray
    ev_sign: np.ndarray

    def intervals(self, k: int) -> list[tuple[int, int]]:
        s, t = self.ptr[k], self.ptr[k + 1]
        return list(zip(self.lo[s:t].tolist(), self.hi[s:t].tolist()))

    def starts_on_path(self, k: int) -> bool:
        s = self.ptr[k]
        return bool(self.ptr[k + 1] > s and self.lo[s] == 0)

    def transitions(self, k: int) -> list[int]:
        """Positions i where e_i and e_{i+1} differ in membership (the last on/off index)."""
        out = []
        for a, b in self.intervals(k):
            if a > 0:
                out.append(a - 1)
            if b < self.hld.size - 1:
                out.append(b)
        return out


def build_schedule(g: Graph, t: RootedTree, h: HldIndex | None = None) -> TransitionSchedule:
    h = decompose(t) if h is None else h
    in_tree = np.zeros(g.m, dtype=bool)
    in_tree[t.parent_edge[t.parent_edge >= 0]] = True
    nontree = np.flatnonzero(~in_tree)
    ptr, lo, hi = h.intervals_of(g.u[nontree], g.v[nontree])
    ev_ptr, ev_edge, ev_sign = _events(h.size, ptr, lo, hi)
    return TransitionSchedule(h, nontree, g.w[nontree], ptr, lo, hi, ev_ptr, ev_edge, ev_sign)


@kernel
def _sweep_one(tree_w, weight, ev_ptr, ev_edge, ev_sign):
    running = 0.0
    best = np.inf
    best_pos = -1
    for i in range(tree_w.shape[0]):
        for s in range(ev_ptr[i], ev_ptr[i + 1]):
            running += ev_sign[s] * weight[ev_edge[s]]
        cand = running + tree_w[i]
        if cand < best:
            best = cand
            best_pos = i
    return best, best_pos


@kernel
def _sweep_two(tree_w, weight, ptr, lo, hi, ev_ptr, ev_edge, ev_sign, sentinel):
    count = tree_w.shape[0]
    mn, ad, size = seg_build(tree_w)
    ops = 0
    # every e_i starts off every path: each non-tree edge weighs on its own path
    for q in range(ptr.shape[0] - 1):
        for s in range(ptr[q], ptr[q + 1]):
            seg_range_add(mn, ad, size, lo[s], hi[s], weight[q])
            ops += 1
    best = mn[1]
    best_i = seg_argmin(mn, size)
    best_j = -1
    ops += 1
    offset = 0.0
    for i in range(count):
        for s in range(ev_ptr[i], ev_ptr[i + 1]):
            q = ev_edge[s]
            x = weight[q]
            if ev_sign[s] > 0:
                offset += x
                x = -2.0 * x
            else:
                offset -= x
                x = 2.0 * x
            for r in range(ptr[q], ptr[q + 1]):
                seg_range_add(mn, ad, size, lo[r], hi[r], x)
                ops += 1
        leaf = size + i
        saved_mn = mn[leaf]
        saved_ad = ad[leaf]
        mn[leaf] += sentinel
        ad[leaf] += sentinel
        _pull(mn, ad, leaf)
        j = seg_argmin(mn, size)
        cand = mn[1] + offset + tree_w[i]
        mn[leaf] = saved_mn
        ad[leaf] = saved_ad
        _pull(mn, ad, leaf)
        ops += 3
        if j != i and cand < best:
            best = cand
            best_i = i
            best_j = j
    return best, best_i, best_j, ops


def subtree_masks(t: RootedTree, h: HldIndex | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Preorder index and subtree size, so ``below(x)`` is an index range."""
    h = decompose(t) if h is None else h
    return h.index, t.subtree_size


def recover_cut(g: Graph, t: RootedTree, cut_edges, h: HldIndex | None = None, **meta) -> CutResult:
    """The cut whose tree edges are exactly ``cut_edges`` (1 or 2 graph edge ids)."""
    ids = [int(e) for e in cut_edges]
    if not 1 <= len(ids) <= 2:
        raise ValueError("a 2-respecting cut takes one or two tree edges")
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate tree edge ids")
    owner = np.full(g.m, -1, dtype=np.int64)
    kids = np.flatnonzero(t.parent_edge >= 0)
    owner[t.parent_edge[kids]] = kids
    index, size = subtree_masks(t, h)
    side = np.zeros(g.n, dtype=bool)
    for e in ids:
        x = owner[e] if 0 <= e < g.m else -1
        if x < 0:
            raise ValueError(f"edge {e} is not a tree edge")
        side ^= (index >= index[x]) & (index < index[x] + size[x])
    return make_cut(g, side, tuple(sorted(ids)), **meta)


def min_1respect(g: Graph, t: RootedTree) -> CutResult:
    """Lightest cut that takes exactly one edge of ``t``."""
    sched = build_schedule(g, t)
    h = sched.hld
    value, pos = _sweep_one(h.edge_weights(), sched.weight, sched.ev_ptr, sched.ev_edge, sched.ev_sign)
    return recover_cut(g, t, [h.order[pos]], h, sweep_value=float(value))


def min_2respect(g: Graph, t: RootedTree, *, schedule: TransitionSchedule | None = None) -> CutResult:
    """Lightest cut that takes one or two edges of ``t``.

    ``meta["agg_ops"]`` is the number of segment-tree range operations, and
    ``meta["sweep_value"]`` the value the sweep reported before recovery.
    """
    sched = build_schedule(g, t) if schedule is None else schedule
    h = sched.hld
    if h.size == 0:
        raise ValueError("tree has no edges")
    sentinel = g.total_weight + 1.0
    value, bi, bj, ops = _sweep_two(
        h.edge_weights(), sched.weight, sched.ptr, sched.lo, sched.hi,
        sched.ev_ptr, sched.ev_edge, sched.ev_sign, sentinel,
    )
    cut = [h.order[bi]] if bj < 0 else [h.order[bi], h.order[bj]]
    return recover_cut(g, t, cut, h, sweep_value=float(value), agg_ops=int(ops))


def sweep_with_aggregator(g: Graph, t: RootedTree, on_step=None) -> tuple[float, int, int]:
    """Object-level 2-respecting sweep over a :class:`PathAggregator`.

    Same procedure as :func:`min_2respect`, slower, with a hook
    ``on_step(i, aggregator)`` called after the updates for position ``i`` and
    before ``e_i`` is masked. Returns (value, i, j) with ``j = -1`` for a
    single-edge cut.
    """
    sched = build_schedule(g, t)
    h = sched.hld
    agg = PathAggregator.build(h)
    ends = [(int(g.u[e]), int(g.v[e])) for e in sched.nontree]
    for (a, b), w in zip(ends, sched.weight):
        agg.path_add(a, b, w)
    best, best_i = agg.query_min()
    best_j = -1
    sentinel = g.total_weight + 1.0
    tree_w = h.edge_weights()
    for i in range(h.size):
        for s in range(sched.ev_ptr[i], sched.ev_ptr[i + 1]):
            q = sched.ev_edge[s]
            a, b = ends[q]
            w = float(sched.weight[q])
            if sched.ev_sign[s] > 0:
                agg.path_add(a, b, -w)
                agg.nonpath_add(a, b, w)
            else:
                agg.nonpath_add(a, b, -w)
                agg.path_add(a, b, w)
        if on_step is not None:
            on_step(i, agg)
        agg.add_at(i, sentinel)
        q_val, j = agg.query_min()
        agg.add_at(i, -sentinel)
        cand = q_val + tree_w[i]
        if j != i and cand < best:
            best, best_i, best_j = cand, i, j
    return best, best_i, best_j


def _better(a: CutResult, b: CutResult | None) -> bool:
    if b is None:
        return True
    scale = max(abs(a.value), abs(b.value), 1.0)
    if a.value < b.value - 1e-9 * scale:
        return True
    if a.value > b.value + 1e-9 * scale:
        return False
    return tuple(a.side.tolist()) < tuple(b.side.tolist())


def _zero_cut(g: Graph) -> CutResult | None:
    positive = g.w > 0
    labels = component_labels(g.n, g.u[positive], g.v[positive])
    if np.all(labels == 0):
        return None
    return make_cut(g, labels != 0, algorithm="respect", note="zero-weight cut")


def min_cut(g: Graph, cfg: SamplerConfig = SamplerConfig(), *, parallel: bool = False) -> CutResult:
    """Minimum cut of ``g``; exact with probability at least 1 - n^-d.

    Trees come from the rounded, sampled pipeline; every candidate cut is
    evaluated on the original weights of ``g``.
    """
    if g.n < 2:
        raise ValueError("minimum cut needs at least two vertices")
    if cfg.tree_count(g.n) == 0:
        raise ValueError("at least one tree is needed")
    zero = _zero_cut(g)
    if zero is not None:
        return zero
    run = sample_packing(g, cfg)
    distinct: dict[bytes, RootedTree] = {}
    for ids, tree in zip(run.tree_ids, run.trees):
        distinct.setdefault(ids.tobytes(), tree)
    trees = list(distinct.values())
    if parallel and len(trees) > 1:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda tr: min_2respect(g, tr), trees))
    else:
        results = [min_2respect(g, tr) for tr in trees]
    best = None
    for res in results:
        if _better(res, best):
            best = res
    ops = [r.meta["agg_ops"] for r in results]
    best.meta.update(
        algorithm="respect",
        trees=len(run.trees),
        distinct_trees=len(trees),
        mst_calls=run.mst_calls,
        mst_runs=run.mst_runs,
        sampler_rounds=run.rounds,
        agg_ops=int(round(sum(ops) / len(ops))),
        agg_ops_total=int(sum(ops)),
    )
    return best
