"""Sample a small-cut multigraph, pack it, and draw trees from the packing.

The minimum cut of the rounded graph is unknown, so the sampling rate is
tuned by a guess ``c'`` that starts at an upper bound and halves until the
packing of the sample is heavy enough to certify ``c' < 6c``. One more
sample at ``c'/6`` is then packed and the trees are drawn from it.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from ._accel import kernel
from .graph import DisconnectedGraphError, Graph, IntGraph, normalize_and_round, upper_bound_u
from .packing import Packing, pack, trees_at_rounds
from .spanning_tree import RootedTree

log = logging.getLogger(__name__)

_DRAW_STREAM = 2**32 - 1


class SamplerError(RuntimeError):
    """The c' search ran out of range without accepting a packing."""


@dataclass(frozen=True)
class SamplerConfig:
    """Parameters of the tree sampler and the constants derived from them.

    ``d`` is the success exponent (failure probability at most n^-d),
    ``eps1``/``eps2``/``eps3`` the rounding, sampling and packing accuracies.
    ``trees`` overrides the number of drawn trees; setting it gives up the
    high-probability guarantee and exists for desk-scale experiments.
    """

    d: float = 2.0
    eps1: float = 1 / 100
    eps2: float = 1 / 6
    eps3: float = 1 / 5
    seed: int = 0
    trees: int | None = None
    spanning_tree_bound: bool = False

    def __post_init__(self) -> None:
        for name in ("eps1", "eps2", "eps3"):
            val = getattr(self, name)
            if not 0.0 < val < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {val}")
        if self.d <= 0:
            raise ValueError("d must be positive")
        if self.f <= 0:
            raise ValueError(f"eps triple gives non-positive fraction f = {self.f:.6g}")
        if (1 - self.eps3) / (1 + self.eps2) <= 2 / 3:
            raise ValueError("need (1 - eps3) / (1 + eps2) > 2/3")
        if self.trees is not None and self.trees < 0:
            raise ValueError("trees override must be non-negative")

    @property
    def multiplier(self) -> int:
        return int(round(1.0 / self.eps1))

    @property
    def f(self) -> float:
        """Guaranteed fraction (by weight) of packed trees that 2-respect the min cut."""
        e1, e2, e3 = self.eps1, self.eps2, self.eps3
        return 1.5 - ((2 + e1) / (2 - e1)) * (1 + e2) / (1 - e3)

    def b(self, n: int) -> float:
        return 3.0 * (self.d + 2) * math.log(n) / self.eps2**2

    def cap(self, n: int) -> int:
        return math.ceil((1 + self.eps2) * 12 * self.b(n))

    def accept_threshold(self, n: int) -> float:
        return 0.5 * (1 - self.eps3) / (1 + self.eps2) * self.b(n)

    def tree_count(self, n: int) -> int:
        if self.trees is not None:
            return self.trees
        return math.ceil(-self.d * math.log(n) / math.log(1 - self.f))


@dataclass(frozen=True, eq=False)
class SampledGraph(IntGraph):
    """A binomial sample of the rounded graph; ``p`` and ``c_prime`` as used."""

    p: float = 1.0
    c_prime: float = 0.0


@dataclass
class SamplerRun:
    """Everything one run of the c' search produced."""

    packing: Packing
    trees: list[RootedTree]
    tree_ids: list[np.ndarray]
    c_history: list[float] = field(default_factory=list)
    weights: list[float] = field(default_factory=list)
    mst_calls: int = 0
    mst_runs: int = 0
    rounds: int = 0


@kernel
def _binomial_inverse(trials, p, cap, u):
    """Inverse-transform draw of min(Binomial(trials, p), cap) for uniform ``u``."""
    if p >= 1.0:
        return min(trials, cap)
    mean = trials * p
    if mean - 10.0 * math.sqrt(mean * (1.0 - p)) > cap:
        return cap
    top = min(trials, cap)
    log_term = trials * math.log1p(-p)
    log_ratio = math.log(p) - math.log1p(-p)
    acc = 0.0
    comp = 0.0
    for k in range(top):
        # Kahan-compensated running CDF
        y = math.exp(log_term) - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
        if acc > u:
            return k
        log_term += math.log((trials - k) / (k + 1.0)) + log_ratio
    return top


@kernel
def _binomial_many(trials, p, cap, uniforms):
    out = np.empty(trials.shape[0], dtype=np.int64)
    for k in range(trials.shape[0]):
        out[k] = _binomial_inverse(trials[k], p, cap, uniforms[k])
    return out


def _stream(seed: int, key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(key)])))


def binomial_sample(trials: int, p: float, cap: int, rng: np.random.Generator) -> int:
    """One draw of min(Binomial(trials, p), cap), consuming one uniform from ``rng``."""
    if not 0.0 < p <= 1.0:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    return int(_binomial_inverse(int(trials), float(p), int(cap), rng.random()))


def binomial_samples(trials, p: float, cap: int, rng: np.random.Generator) -> np.ndarray:
    """Vectorized :func:`binomial_sample`, one uniform per entry of ``trials``."""
    if not 0.0 < p <= 1.0:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    trials = np.asarray(trials, dtype=np.int64)
    return _binomial_many(trials, float(p), int(cap), rng.random(trials.shape[0]))


def build_sample(gp: IntGraph, c_prime: float, cfg: SamplerConfig, rng) -> SampledGraph:
    """Keep each unit copy of every edge with probability min(b/c', 1), capped."""
    if c_prime <= 0:
        raise ValueError("c_prime must be positive")
    b = cfg.b(gp.n)
    p = min(b / c_prime, 1.0)
    cap = cfg.cap(gp.n)
    if isinstance(rng, (int, np.integer)):
        rng = _stream(cfg.seed, int(rng))
    weights = binomial_samples(gp.w, p, cap, rng)
    keep = weights > 0
    return SampledGraph(
        gp.n, gp.u[keep], gp.v[keep], weights[keep], gp.edge_ids[keep], p=p, c_prime=c_prime
    )


def draw_trees(p: Packing, t: int, rng: np.random.Generator) -> list[int]:
    """Indices of ``t`` trees of ``p`` drawn with replacement, proportional to weight."""
    if len(p) == 0 or p.rounds == 0:
        raise ValueError("cannot draw from an empty packing")
    if t == 0:
        return []
    cumulative = np.cumsum(p.tree_units)
    picks = rng.integers(0, int(cumulative[-1]), size=t)
    return np.searchsorted(cumulative, picks, side="right").tolist()


def _pack_or_empty(h: SampledGraph, eps3: float, keep_trees: bool) -> Packing | None:
    try:
        return pack(h, eps3, keep_trees=keep_trees)
    except DisconnectedGraphError:
        return None


def sample_packing(g: Graph, cfg: SamplerConfig = SamplerConfig()) -> SamplerRun:
    """Run the c' search on ``g`` and draw ``cfg.tree_count(n)`` trees."""
    if g.n < 2:
        raise ValueError("need at least two vertices")
    gp = normalize_and_round(g, cfg.multiplier)
    threshold = cfg.accept_threshold(g.n)
    c_prime = float(upper_bound_u(gp, spanning_tree_bound=cfg.spanning_tree_bound))
    history: list[float] = []
    weights: list[float] = []
    calls = runs = 0
    round_no = 0
    final: Packing | None = None
    while final is None:
        if c_prime < 1.0:
            raise SamplerError(f"c' fell below 1 after {round_no} rounds without acceptance")
        h = build_sample(gp, c_prime, cfg, round_no)
        history.append(c_prime)
        round_no += 1
        packed = _pack_or_empty(h, cfg.eps3, keep_trees=False)
        w = 0.0 if packed is None else packed.weight
        weights.append(w)
        if packed is not None:
            calls += packed.mst_calls
            runs += packed.mst_runs
        if h.p >= 1.0:
            if packed is None:
                raise SamplerError("rounded graph has no spanning tree")
            final = packed
        elif w >= threshold:
            c_prime /= 6.0
            h = build_sample(gp, c_prime, cfg, round_no)
            history.append(c_prime)
            round_no += 1
            final = _pack_or_empty(h, cfg.eps3, keep_trees=False)
            if final is None:
                raise SamplerError("final sample has no spanning tree")
            weights.append(final.weight)
            calls += final.mst_calls
            runs += final.mst_runs
            if final.weight < threshold:
                log.info("final packing weight %.3f below threshold %.3f", final.weight, threshold)
        else:
            c_prime /= 2.0
    # a weighted draw over trees is a uniform draw over rounds; replaying
    # the packing for just those rounds keeps memory O(tree_count * n)
    draw = _stream(cfg.seed, _DRAW_STREAM)
    offsets = draw.integers(0, final.rounds, size=cfg.tree_count(g.n))
    rows, which = trees_at_rounds(final, offsets)
    ids = [np.sort(final.graph.edge_ids[r]) for r in rows]
    built: dict[int, RootedTree] = {}
    for k in which.tolist():
        if k not in built:
            built[k] = RootedTree.from_edge_ids(g.n, g.u, g.v, g.w, ids[k])
    tree_ids = [ids[k] for k in which.tolist()]
    trees = [built[k] for k in which.tolist()]
    return SamplerRun(final, trees, tree_ids, history, weights, calls, runs, round_no)


def respecting_trees(g: Graph, cfg: SamplerConfig = SamplerConfig()) -> list[RootedTree]:
    """Spanning trees of ``g`` such that, w.h.p., one 2-respects a minimum cut."""
    return sample_packing(g, cfg).trees


def with_seed(cfg: SamplerConfig, seed: int) -> SamplerConfig:
    return replace(cfg, seed=seed)
