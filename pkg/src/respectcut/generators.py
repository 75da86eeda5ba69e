"""Seeded test-graph families."""

from __future__ import annotations

import numpy as np

from .graph import Graph, GraphError

FAMILIES = ("random", "two-cliques", "cycle", "grid")


class GeneratorError(GraphError):
    """Parameters that no graph of the family can satisfy."""


def parse_weight_range(text: str) -> tuple[float, float, bool]:
    """``"lo:hi"`` -> (lo, hi, integral). Integral when both ends parse as ints."""
    try:
        lo_s, hi_s = text.split(":")
    except ValueError:
        raise GeneratorError(f"weight range must look like lo:hi, got {text!r}") from None
    try:
        lo, hi = int(lo_s), int(hi_s)
        integral = True
    except ValueError:
        lo, hi = float(lo_s), float(hi_s)
        integral = False
    if lo < 0 or hi < lo:
        raise GeneratorError(f"bad weight range {text!r}")
    return lo, hi, integral


def _weights(rng: np.random.Generator, count: int, text: str) -> np.ndarray:
    lo, hi, integral = parse_weight_range(text)
    if integral:
        return rng.integers(lo, hi + 1, size=count).astype(np.float64)
    return np.round(rng.uniform(lo, hi, size=count), 3)


def random_graph(
    n: int, p: float | None = None, *, m: int | None = None, weights: str = "1:1", seed: int = 0
) -> Graph:
    """Random spanning tree plus random extra pairs.

    With ``m`` the graph gets exactly ``m`` edges; otherwise every other pair
    is added independently with probability ``p``.
    """
    if n < 2:
        raise GeneratorError("random graphs need n >= 2")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    attach = np.array([rng.integers(0, i) for i in range(1, n)], dtype=np.int64)
    tu = perm[1:]
    tv = perm[attach]
    pairs = {(min(a, b), max(a, b)) for a, b in zip(tu.tolist(), tv.tolist())}
    total_pairs = n * (n - 1) // 2
    if m is not None:
        if not n - 1 <= m <= total_pairs:
            raise GeneratorError(f"m must lie in [{n - 1}, {total_pairs}] for n={n}")
        extra = []
        while len(pairs) < m:
            a, b = rng.integers(0, n, size=2).tolist()
            key = (min(a, b), max(a, b))
            if a != b and key not in pairs:
                pairs.add(key)
                extra.append(key)
        edges = [(a, b) for a, b in zip(tu.tolist(), tv.tolist())] + extra
    else:
        if p is None or not 0.0 <= p <= 1.0:
            raise GeneratorError("random graphs need p in [0, 1] or an edge count m")
        iu, iv = np.triu_indices(n, k=1)
        chosen = rng.random(iu.shape[0]) < p
        edges = [(a, b) for a, b in zip(tu.tolist(), tv.tolist())]
        for a, b in zip(iu[chosen].tolist(), iv[chosen].tolist()):
            if (a, b) not in pairs:
                pairs.add((a, b))
                edges.append((a, b))
    w = _weights(rng, len(edges), weights)
    u = np.array([e[0] for e in edges], dtype=np.int64)
    v = np.array([e[1] for e in edges], dtype=np.int64)
    return Graph.from_arrays(n, u, v, w)


def two_cliques(k: int, bridges: int, bridge_weight: float = 1.0) -> tuple[Graph, float]:
    """Two unit-weight K_k joined by ``bridges`` disjoint edges; returns the planted cut."""
    if k < 2 or bridges < 1 or bridges > k:
        raise GeneratorError("need k >= 2 and 1 <= bridges <= k")
    planted = bridges * bridge_weight
    if planted > k - 1:
        raise GeneratorError(f"planted cut {planted} exceeds clique degree {k - 1}")
    edges = []
    for base in (0, k):
        for a in range(k):
            for b in range(a + 1, k):
                edges.append((base + a, base + b, 1.0))
    for i in range(bridges):
        edges.append((i, k + i, float(bridge_weight)))
    return Graph.from_edges(2 * k, edges), planted


def cycle(n: int, weight: float = 1.0) -> Graph:
    if n < 3:
        raise GeneratorError("cycles need n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n, weight) for i in range(n)])


def grid(rows: int, cols: int | None = None, *, weights: str = "1:1", seed: int = 0) -> Graph:
    cols = rows if cols is None else cols
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise GeneratorError("grid needs at least two cells")
    edges = []
    for r in range(rows):
        for c in range(cols):
            x = r * cols + c
            if c + 1 < cols:
                edges.append((x, x + 1))
            if r + 1 < rows:
                edges.append((x, x + cols))
    w = _weights(np.random.default_rng(seed), len(edges), weights)
    return Graph.from_edges(rows * cols, [(a, b, wt) for (a, b), wt in zip(edges, w)])


def generate(
    family: str,
    n: int,
    *,
    p: float | None = None,
    m: int | None = None,
    weights: str = "1:1",
    seed: int = 0,
    bridges: int = 1,
    bridge_weight: float = 1.0,
    cols: int | None = None,
) -> tuple[Graph, list[str]]:
    """Build a graph of ``family``; also returns header comment lines."""
    notes = [f"family {family} n {n} seed {seed}"]
    if family == "random":
        g = random_graph(n, p, m=m, weights=weights, seed=seed)
    elif family == "two-cliques":
        g, planted = two_cliques(n, bridges, bridge_weight)
        notes.append(f"planted {planted:g}")
    elif family == "cycle":
        g = cycle(n)
        notes.append("planted 2")
    elif family == "grid":
        g = grid(n, cols, weights=weights, seed=seed)
    else:
        raise GeneratorError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    return g, notes
