import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from respectcut.generators import two_cliques
from respectcut.graph import Graph, IntGraph, normalize_and_round
from respectcut.packing import pack
from respectcut.sampler import (
    SamplerConfig,
    binomial_sample,
    binomial_samples,
    build_sample,
    draw_trees,
    respecting_trees,
    sample_packing,
)


class TestConfig:
    def test_default_closed_forms(self):
        cfg = SamplerConfig()
        for n in (2, 10, 256, 1000):
            b = 3 * 6**2 * (cfg.d + 2) * math.log(n)
            assert cfg.b(n) == pytest.approx(b, rel=1e-12)
            assert cfg.cap(n) == math.ceil(7 / 6 * 12 * cfg.b(n))
            assert cfg.accept_threshold(n) == pytest.approx(24 * b / 70, rel=1e-12)

    def test_tree_count_constant(self):
        cfg = SamplerConfig()
        assert -1 / math.log(1 - cfg.f) == pytest.approx(36.52, abs=0.005)
        for n in (10, 100, 1000):
            exact = math.ceil(-cfg.d * math.log(n) / math.log(1 - cfg.f))
            assert cfg.tree_count(n) == exact
            assert 0 <= math.ceil(36.53 * cfg.d * math.log(n)) - exact <= 1
        assert cfg.tree_count(1000) == 505

    def test_trees_override(self):
        assert SamplerConfig(trees=7).tree_count(1000) == 7

    @pytest.mark.parametrize(
        "kwargs",
        [{"eps1": 0.0}, {"eps2": 1.0}, {"eps3": 0.5}, {"eps2": 0.4}, {"d": 0}, {"trees": -1}],
    )
    def test_rejects_bad_parameters(self, kwargs):
        with pytest.raises(ValueError):
            SamplerConfig(**kwargs)


class TestBinomial:
    def test_p_one(self):
        assert binomial_sample(7, 1.0, 100, np.random.default_rng(0)) == 7
        assert binomial_sample(700, 1.0, 100, np.random.default_rng(0)) == 100

    def test_saturation(self):
        assert binomial_sample(10**6, 0.5, 50, np.random.default_rng(0)) == 50

    @pytest.mark.parametrize("p", [0.0, -0.1, 1.5])
    def test_bad_p(self, p):
        with pytest.raises(ValueError):
            binomial_sample(5, p, 10, np.random.default_rng(0))

    def test_mean_twenty_point_three(self):
        rng = np.random.default_rng(2024)
        draws = binomial_samples(np.full(10**5, 20), 0.3, 10**6, rng)
        se = math.sqrt(20 * 0.3 * 0.7 / 10**5)
        assert abs(draws.mean() - 6.0) <= 3 * se

    def test_distribution_matches_pmf(self):
        rng = np.random.default_rng(7)
        draws = binomial_samples(np.full(200_000, 12), 0.25, 100, rng)
        freq = np.bincount(draws, minlength=13) / draws.size
        pmf = np.array([math.comb(12, k) * 0.25**k * 0.75 ** (12 - k) for k in range(13)])
        assert np.all(np.abs(freq - pmf) <= 4 * np.sqrt(pmf * (1 - pmf) / draws.size) + 1e-9)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 10**7), st.floats(1e-6, 1.0), st.integers(0, 500), st.integers(0, 2**31))
    def test_never_exceeds_cap(self, trials, p, cap, seed):
        x = binomial_sample(trials, p, cap, np.random.default_rng(seed))
        assert 0 <= x <= min(trials, cap)


class TestBuildSample:
    def triangle(self):
        return normalize_and_round(Graph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]))

    def test_p_one_branch(self):
        cfg = SamplerConfig()
        gp = self.triangle()
        h = build_sample(gp, cfg.b(3) / 2, cfg, 0)
        assert h.p == 1.0
        assert h.w.tolist() == [100, 100, 100]

    def test_boundary(self):
        cfg = SamplerConfig()
        assert build_sample(self.triangle(), cfg.b(3), cfg, 0).p == 1.0

    def test_large_c_prime(self):
        cfg = SamplerConfig(seed=3)
        gp = self.triangle()
        totals = []
        for r in range(400):
            h = build_sample(gp, 100 * cfg.b(3), cfg, r)
            assert np.all(h.w <= cfg.cap(3)) and np.all(h.w > 0)
            totals.append(int(h.w.sum()))
        p = 0.01
        se = math.sqrt(300 * p * (1 - p) / 400)
        assert abs(np.mean(totals) - 300 * p) <= 3 * se

    def test_deterministic_per_round_key(self):
        cfg = SamplerConfig(seed=11)
        gp = self.triangle()
        a = build_sample(gp, 50 * cfg.b(3), cfg, 4)
        b = build_sample(gp, 50 * cfg.b(3), cfg, 4)
        assert np.array_equal(a.w, b.w) and np.array_equal(a.edge_ids, b.edge_ids)

    def test_rejects_nonpositive_c(self):
        with pytest.raises(ValueError):
            build_sample(self.triangle(), 0, SamplerConfig(), 0)


def _small_packing():
    u, v = np.array([0, 1, 0]), np.array([1, 2, 2])
    return pack(IntGraph(3, u, v, np.array([1, 1, 1]), np.arange(3)), 0.5)


class TestDrawTrees:
    def test_t_zero(self):
        assert draw_trees(_small_packing(), 0, np.random.default_rng(0)) == []

    def test_single_tree(self):
        g = IntGraph(2, np.array([0]), np.array([1]), np.array([3]), np.arange(1))
        p = pack(g, 0.5)
        assert draw_trees(p, 5, np.random.default_rng(0)) == [0] * 5

    def test_empty_packing(self):
        p = pack(IntGraph(2, np.array([0]), np.array([1]), np.array([1]), np.arange(1)), 0.5, keep_trees=False)
        with pytest.raises(ValueError):
            draw_trees(p, 3, np.random.default_rng(0))

    def test_proportional(self):
        p = _small_packing()
        # replace weights with {1, 3} on two of its trees
        from dataclasses import replace

        q = replace(p, tree_edges=p.tree_edges[:2], tree_units=np.array([1, 3]))
        picks = np.array(draw_trees(q, 10**5, np.random.default_rng(5)))
        freq = (picks == 1).mean()
        assert abs(freq - 0.75) <= 3 * math.sqrt(0.75 * 0.25 / 10**5)


class TestRespectingTrees:
    def test_single_edge(self):
        g = Graph.from_edges(2, [(0, 1, 2.5)])
        cfg = SamplerConfig()
        trees = respecting_trees(g, cfg)
        assert len(trees) == cfg.tree_count(2)
        assert all(t.edge_ids.tolist() == [0] for t in trees)

    def test_triangle(self):
        g = Graph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
        trees = respecting_trees(g, SamplerConfig(seed=1))
        assert all(len(t.edge_ids) == 2 for t in trees)

    @pytest.mark.parametrize("seed", range(5))
    def test_c_prime_schedule(self, seed):
        g, _ = two_cliques(20, 3)
        cfg = SamplerConfig(seed=seed)
        run = sample_packing(g, cfg)
        hist, weights = run.c_history, run.weights
        assert len(hist) >= 2
        threshold = cfg.accept_threshold(g.n)
        for k in range(len(hist) - 1):
            if weights[k] >= threshold:
                assert k == len(hist) - 2
                assert hist[k + 1] == hist[k] / 6
            else:
                assert hist[k + 1] == hist[k] / 2

    def test_two_k6_every_run_has_a_respecting_tree(self):
        g, _ = two_cliques(6, 2)
        side = np.arange(12) < 6
        for seed in range(50):
            trees = respecting_trees(g, SamplerConfig(seed=seed))
            crossings = [int((side[g.u[t.edge_ids]] != side[g.v[t.edge_ids]]).sum()) for t in trees]
            assert min(crossings) <= 2

    def test_seed_determinism(self):
        g, _ = two_cliques(7, 2)
        a = sample_packing(g, SamplerConfig(seed=9))
        b = sample_packing(g, SamplerConfig(seed=9))
        assert [t.tolist() for t in a.tree_ids] == [t.tolist() for t in b.tree_ids]
        assert a.c_history == b.c_history
