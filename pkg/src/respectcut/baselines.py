"""Reference minimum-cut algorithms used as oracles and in benchmarks."""

from __future__ import annotations

import math

import numpy as np

from ._accel import kernel
from .graph import CutResult, Graph, make_cut
from .spanning_tree import RootedTree

BRUTE_FORCE_MAX_N = 20
BRUTE_2RESPECT_MAX_N = 256


def _dense(g: Graph) -> np.ndarray:
    adj = np.zeros((g.n, g.n))
    np.add.at(adj, (g.u, g.v), g.w)
    np.add.at(adj, (g.v, g.u), g.w)
    return adj


@kernel
def _stoer_wagner(adj):
    n = adj.shape[0]
    a = adj.copy()
    alive = np.ones(n, dtype=np.bool_)
    # group[x] = representative that vertex x has been merged into
    group = np.arange(n)
    best = np.inf
    best_rep = -1
    best_snapshot = np.zeros(n, dtype=np.int64)
    conn = np.empty(n)
    added = np.empty(n, dtype=np.bool_)
    for phase in range(n - 1):
        for x in range(n):
            conn[x] = 0.0
            added[x] = False
        prev = -1
        last = -1
        remaining = n - phase
        for step in range(remaining):
            pick = -1
            for x in range(n):
                if alive[x] and not added[x]:
                    if pick < 0 or conn[x] > conn[pick]:
                        pick = x
            added[pick] = True
            prev = last
            last = pick
            if step < remaining - 1:
                for x in range(n):
                    if alive[x] and not added[x]:
                        conn[x] += a[pick, x]
        cut_of_phase = conn[last]
        if cut_of_phase < best:
            best = cut_of_phase
            best_rep = last
            for x in range(n):
                best_snapshot[x] = group[x]
        for x in range(n):
            a[prev, x] += a[last, x]
            a[x, prev] = a[prev, x]
        a[prev, prev] = 0.0
        alive[last] = False
        for x in range(n):
            if group[x] == last:
                group[x] = prev
    side = np.zeros(n, dtype=np.bool_)
    for x in range(n):
        side[x] = best_snapshot[x] == best_rep
    return best, side


def stoer_wagner(g: Graph) -> CutResult:
    """Deterministic O(n^3) minimum cut by maximum-adjacency phases."""
    if g.n < 2:
        raise ValueError("minimum cut needs at least two vertices")
    value, side = _stoer_wagner(_dense(g))
    return make_cut(g, side, algorithm="stoer-wagner", phase_value=float(value))


@kernel
def _contract_once(n, u, v, w, uniforms):
    """One weighted contraction run down to two super-vertices."""
    parent = np.arange(n)
    live = np.arange(u.shape[0])
    live_count = u.shape[0]
    prefix = np.empty(u.shape[0] + 1)
    comps = n
    draw = 0
    dirty = True
    while comps > 2:
        if dirty:
            # drop edges that became self-loops, rebuild prefix sums
            kept = 0
            for s in range(live_count):
                e = live[s]
                if w[e] > 0 and _root(parent, u[e]) != _root(parent, v[e]):
                    live[kept] = e
                    kept += 1
            live_count = kept
            prefix[0] = 0.0
            for s in range(live_count):
                prefix[s + 1] = prefix[s] + w[live[s]]
            dirty = False
            if live_count == 0:
                break
        if draw >= uniforms.shape[0]:
            break
        target = uniforms[draw] * prefix[live_count]
        draw += 1
        s = np.searchsorted(prefix[1 : live_count + 1], target, side="right")
        if s >= live_count:
            s = live_count - 1
        e = live[s]
        a = _root(parent, u[e])
        b = _root(parent, v[e])
        if a == b:
            dirty = True
            continue
        parent[a] = b
        comps -= 1
    labels = np.empty(n, dtype=np.int64)
    for x in range(n):
        labels[x] = _root(parent, x)
    return labels


@kernel
def _root(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def contraction_min_cut(g: Graph, trials: int, rng: np.random.Generator | int = 0) -> CutResult:
    """Best cut over ``trials`` independent weight-proportional contraction runs.

    Monte Carlo: the answer may exceed the minimum cut.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if g.n < 2:
        raise ValueError("minimum cut needs at least two vertices")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    best = None
    for _ in range(trials):
        # a draw either merges or hits a self-loop, which forces a rebuild
        # after which the next draw merges: at most 2(n - 2) draws
        uniforms = rng.random(2 * g.n + 2)
        labels = _contract_once(g.n, g.u, g.v, g.w, uniforms)
        side = labels == labels[-1] if labels[0] != labels[-1] else labels != labels[0]
        if not side.any() or side.all():
            continue
        value = float(g.w[side[g.u] != side[g.v]].sum())
        if best is None or value < best[0]:
            best = (value, side)
    if best is None:
        raise RuntimeError("no contraction run produced a cut")
    return make_cut(g, best[1], algorithm="contraction", trials=trials)


@kernel
def _gray_code_scan(n, adj):
    """Min cut over all sides S with 0 not in S, via single-vertex flips."""
    side = np.zeros(n, dtype=np.bool_)
    current = 0.0
    best = np.inf
    best_code = 0
    code = 0
    total = 1 << (n - 1)
    for step in range(1, total):
        bit = 0
        while not (step >> bit) & 1:
            bit += 1
        x = bit + 1
        delta = 0.0
        for y in range(n):
            if adj[x, y] != 0.0:
                if side[y] == side[x]:
                    delta += adj[x, y]
                else:
                    delta -= adj[x, y]
        side[x] = not side[x]
        current += delta
        code ^= 1 << bit
        if current < best:
            best = current
            best_code = code
    out = np.zeros(n, dtype=np.bool_)
    for b in range(n - 1):
        if (best_code >> b) & 1:
            out[b + 1] = True
    return best, out


def brute_force_min_cut(g: Graph) -> CutResult:
    """Exact minimum over all 2^(n-1) - 1 bipartitions (n <= 20)."""
    if g.n < 2:
        raise ValueError("minimum cut needs at least two vertices")
    if g.n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}")
    _, side = _gray_code_scan(g.n, _dense(g))
    return make_cut(g, side, algorithm="brute")


def _below_sets(t: RootedTree) -> dict[int, np.ndarray]:
    """For every tree edge id, the vertices under it, by parent-pointer walks."""
    below = {int(e): np.zeros(t.n, dtype=bool) for e in t.parent_edge if e >= 0}
    for x in range(t.n):
        y = x
        while t.parent[y] >= 0:
            below[int(t.parent_edge[y])][x] = True
            y = int(t.parent[y])
    return below


@kernel
def _pair_scan(u, v, w, masks):
    k = masks.shape[0]
    best = np.inf
    bi = -1
    bj = -1
    for i in range(k):
        for j in range(i, k):
            total = 0.0
            for e in range(u.shape[0]):
                a = masks[i, u[e]] != masks[j, u[e]] if j != i else masks[i, u[e]]
                b = masks[i, v[e]] != masks[j, v[e]] if j != i else masks[i, v[e]]
                if a != b:
                    total += w[e]
            if total < best:
                best = total
                bi = i
                bj = j
    return best, bi, bj


def brute_force_2respect(g: Graph, t: RootedTree) -> CutResult:
    """Exact minimum over every single tree edge and every pair (n <= 256)."""
    if g.n > BRUTE_2RESPECT_MAX_N:
        raise ValueError(f"limited to n <= {BRUTE_2RESPECT_MAX_N}")
    below = _below_sets(t)
    ids = sorted(below)
    masks = np.array([below[e] for e in ids], dtype=np.bool_)
    _, bi, bj = _pair_scan(g.u, g.v, g.w, masks)
    side = masks[bi] if bi == bj else masks[bi] ^ masks[bj]
    tree_edges = (ids[bi],) if bi == bj else (ids[bi], ids[bj])
    return make_cut(g, side, tree_edges, algorithm="brute-2respect")


def default_contraction_trials(n: int) -> int:
    """Trials giving failure probability at most 1/n for a single minimum cut."""
    return max(1, math.ceil(n * (n - 1) / 2 * math.log(max(n, 2))))
