"""Private MST drivers: exactness limits, output laws, and budget algebra."""

import math

import numpy as np
import pytest

from statutil import empirical, tv_distance

from dpmst.cutqueue import CutQueue
from dpmst.errors import DisconnectedGraph, InvalidParam
from dpmst.graph import (
    Graph,
    RunCounters,
    WeightAssignment,
    exact_mst,
    gen_complete_graph,
    is_spanning_tree,
)
from dpmst.mst import (
    PURE_DP,
    ZCDP,
    PrivacySpec,
    _select_noisy_max,
    fast_pamst,
    pamst_baseline,
    post_process_gaussian,
    post_process_laplace,
    utility_bound,
)
from dpmst.noise import RngStream
from dpmst.rnm import Candidate, rnm_naive


def triangle():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    w = WeightAssignment(weights=np.array([1.0, 2.0, 3.0]), sensitivity=1.0)
    return g, w


class TestPrivacySpec:
    def test_exactly_one_budget(self):
        with pytest.raises(InvalidParam):
            PrivacySpec(sensitivity=1.0)
        with pytest.raises(InvalidParam):
            PrivacySpec(sensitivity=1.0, rho=0.1, epsilon=0.1)

    def test_modes(self):
        assert PrivacySpec(sensitivity=1.0, rho=0.1).mode == ZCDP
        assert PrivacySpec(sensitivity=1.0, epsilon=0.1).mode == PURE_DP

    def test_defaults(self):
        spec = PrivacySpec(sensitivity=0.25, rho=0.1)
        assert spec.effective_step() == 0.25
        assert spec.effective_mu(64) == pytest.approx(1 / 64)
        assert PrivacySpec(sensitivity=1.0, rho=0.1, step=0.5,
                           mu=0.05).effective_mu(64) == 0.05

    def test_invalid_values(self):
        for kwargs in ({"rho": -1.0}, {"epsilon": 0.0}, {"rho": 0.1, "mu": 1.5},
                       {"rho": 0.1, "step": 0.0}):
            with pytest.raises(InvalidParam):
                PrivacySpec(sensitivity=1.0, **kwargs)
        with pytest.raises(InvalidParam):
            PrivacySpec(sensitivity=0.0, rho=0.1)


class TestNoiselessEquivalence:
    @pytest.mark.parametrize("seed", range(10))
    def test_fast_pamst_recovers_exact_mst(self, seed):
        g, w = gen_complete_graph(int(np.random.default_rng(seed).integers(4, 24)),
                                  seed=seed)
        spec = PrivacySpec(sensitivity=1e-5, rho=0.1, step=1e-12)
        res, _ = fast_pamst(RngStream(seed), g, w, spec, noiseless=True)
        assert res.true_weight == pytest.approx(exact_mst(g, w).true_weight,
                                                abs=1e-12)
        assert is_spanning_tree(g, res.tree_edges)
        assert res.error == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_pamst_baseline_noiseless(self, seed):
        g, w = gen_complete_graph(12, seed=seed)
        spec = PrivacySpec(sensitivity=1e-5, rho=0.1)
        res, _ = pamst_baseline(RngStream(seed), g, w, spec, noiseless=True)
        assert res.true_weight == pytest.approx(exact_mst(g, w).true_weight)

    def test_start_vertex_choice_keeps_weight(self):
        g, w = gen_complete_graph(9, seed=42)
        spec = PrivacySpec(sensitivity=1e-5, rho=0.1, step=1e-12)
        weights = {fast_pamst(RngStream(1), g, w, spec, start_vertex=v,
                              noiseless=True)[0].true_weight
                   for v in range(g.n)}
        assert max(weights) - min(weights) < 1e-12


class TestHighBudgetConcentration:
    def test_triangle_picks_true_mst(self):
        g, w = triangle()
        spec = PrivacySpec(sensitivity=1e-4, rho=1e6)
        hits = 0
        for i in range(1000):
            res, _ = fast_pamst(RngStream(i), g, w, spec)
            hits += sorted(res.tree_edges) == [0, 1]
        assert hits >= 990

    def test_error_shrinks_with_budget(self):
        g, w = gen_complete_graph(24, seed=7)
        spec_lo = PrivacySpec(sensitivity=1e-2, rho=0.01)
        spec_hi = PrivacySpec(sensitivity=1e-2, rho=100.0)
        err = {0.0: 0.0}
        for spec in (spec_lo, spec_hi):
            errs = [fast_pamst(RngStream(i), g, w, spec)[0].error
                    for i in range(20)]
            err[spec.rho] = float(np.mean(errs))
        assert err[100.0] < err[0.01]


class TestStepLawMatchesNaive:
    def test_selection_distribution_on_frozen_cut(self):
        # One frozen cut with top and bottom candidates; the queue-backed
        # selection must match naive noisy argmax on the discretized scores.
        weights = [0.05, 0.12, 0.13, 0.33, 0.74, 0.78]
        g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        w = WeightAssignment(weights=np.array(weights), sensitivity=1.0)
        s, lam, M = 0.1, 2.0, 0.3
        t_steps = 3
        q = CutQueue(g, w, s, negate=True)
        for e in range(6):
            q.insert(e)
        disc = [Candidate(e, q.score_of_edge(e)) for e in range(6)]
        rng = RngStream(13)
        trials = 10 ** 5
        counters = RunCounters()
        a = empirical(
            lambda: _select_noisy_max(rng, q, lam, M, t_steps, counters, False),
            trials)
        b = empirical(lambda: rnm_naive(rng, disc, lam), trials)
        assert tv_distance(a, b) < 0.02
        assert len(a) == 6  # every candidate (incl. bottom group) can win

    def test_same_seed_reproduces_tree(self):
        g, w = gen_complete_graph(20, seed=3)
        spec = PrivacySpec(sensitivity=1e-3, rho=0.5)
        r1, _ = fast_pamst(RngStream(11), g, w, spec)
        r2, _ = fast_pamst(RngStream(11), g, w, spec)
        assert r1.tree_edges == r2.tree_edges
        assert r1.true_weight == r2.true_weight


class TestBudgetLedger:
    @pytest.mark.parametrize("n", [4, 16, 64])
    def test_fast_pamst_composes_exactly(self, n):
        g, w = gen_complete_graph(n, seed=n)
        rho = 0.37
        spec = PrivacySpec(sensitivity=1e-5, rho=rho)
        _, ledger = fast_pamst(RngStream(0), g, w, spec)
        assert ledger.mode == ZCDP
        assert ledger.steps == n - 1
        assert ledger.rho_step == pytest.approx(rho / (n - 1), rel=1e-12)
        assert ledger.total_rho == pytest.approx(rho, rel=1e-12)
        s = spec.effective_step()
        assert ledger.eps_step == pytest.approx(
            2.0 * ledger.lam * (spec.sensitivity + s), rel=1e-12)

    def test_pamst_baseline_composes_exactly(self):
        g, w = gen_complete_graph(16, seed=1)
        spec = PrivacySpec(sensitivity=1e-5, rho=0.2)
        _, ledger = pamst_baseline(RngStream(0), g, w, spec)
        assert ledger.total_rho == pytest.approx(0.2, rel=1e-12)
        assert ledger.eps_step == pytest.approx(
            4.0 * ledger.lam * spec.sensitivity, rel=1e-12)

    def test_pure_dp_mode(self):
        g, w = gen_complete_graph(8, seed=2)
        spec = PrivacySpec(sensitivity=1e-3, epsilon=2.0)
        _, ledger = fast_pamst(RngStream(0), g, w, spec)
        assert ledger.mode == PURE_DP
        assert ledger.total_eps == pytest.approx(2.0, rel=1e-12)


class TestUtilityBound:
    def test_frozen_reference_value(self):
        assert utility_bound(256, 0.1, 1e-5, 1 / 256) == pytest.approx(
            6.0707, rel=1e-3)

    def test_scaling(self):
        base = utility_bound(64, 0.1, 1e-4, 0.01)
        assert utility_bound(64, 0.1, 2e-4, 0.01) == pytest.approx(2 * base)
        assert utility_bound(64, 0.4, 1e-4, 0.01) == pytest.approx(base / 2)

    def test_invalid(self):
        with pytest.raises(InvalidParam):
            utility_bound(1, 0.1, 1e-4, 0.01)
        with pytest.raises(InvalidParam):
            utility_bound(16, 0.1, 1e-4, 1.5)

    def test_ledger_carries_bound(self):
        g, w = gen_complete_graph(32, seed=5)
        spec = PrivacySpec(sensitivity=1e-5, rho=0.1)
        _, ledger = fast_pamst(RngStream(0), g, w, spec)
        assert ledger.utility_bound_value == pytest.approx(
            utility_bound(32, 0.1, 1e-5, 1 / 32))


class TestSampleEconomy:
    def test_fast_pamst_draw_count_is_bounded(self):
        g, w = gen_complete_graph(64, seed=8)
        spec = PrivacySpec(sensitivity=1e-5, rho=0.1)
        res, ledger = fast_pamst(RngStream(21), g, w, spec)
        s = spec.effective_step()
        m_thresh = spec.threshold_constant * math.log(g.n) / ledger.lam
        t_steps = math.ceil(m_thresh / s)
        # per step: at most t_steps+1 group draws plus one binomial draw
        assert res.counters.samples_drawn <= (g.n - 1) * (t_steps + 2) \
            + res.counters.bottom_hits

    def test_baseline_draws_full_cut(self):
        g, w = gen_complete_graph(32, seed=8)
        spec = PrivacySpec(sensitivity=1e-5, rho=0.1)
        res, _ = pamst_baseline(RngStream(4), g, w, spec)
        # sum of cut sizes over the run is far larger than n-1 draws per step
        assert res.counters.samples_drawn > (g.n - 1) * g.n / 4


class TestPostProcessing:
    def test_gaussian_high_budget_recovers_mst(self):
        g, w = gen_complete_graph(24, seed=9)
        spec = PrivacySpec(sensitivity=1e-5, rho=1e8)
        res = post_process_gaussian(RngStream(1), g, w, spec)
        assert res.error == pytest.approx(0.0, abs=1e-9)
        assert is_spanning_tree(g, res.tree_edges)

    def test_laplace_high_budget_recovers_mst(self):
        g, w = gen_complete_graph(24, seed=10)
        spec = PrivacySpec(sensitivity=1e-5, epsilon=1e9)
        for neighborhood in ("linf", "l1"):
            res = post_process_laplace(RngStream(2), g, w, spec,
                                       neighborhood=neighborhood)
            assert res.error == pytest.approx(0.0, abs=1e-9)

    def test_l1_noise_is_much_smaller_than_linf(self):
        g, w = gen_complete_graph(32, seed=11)
        spec = PrivacySpec(sensitivity=1e-2, epsilon=1.0)
        errs = {}
        for neighborhood in ("linf", "l1"):
            runs = [post_process_laplace(RngStream(i), g, w, spec,
                                         neighborhood=neighborhood).error
                    for i in range(10)]
            errs[neighborhood] = float(np.median(runs))
        assert errs["l1"] < errs["linf"]

    def test_mode_mismatch(self):
        g, w = triangle()
        with pytest.raises(InvalidParam):
            post_process_gaussian(RngStream(0), g, w,
                                  PrivacySpec(sensitivity=1.0, epsilon=1.0))
        with pytest.raises(InvalidParam):
            post_process_laplace(RngStream(0), g, w,
                                 PrivacySpec(sensitivity=1.0, rho=1.0))
        with pytest.raises(InvalidParam):
            post_process_laplace(RngStream(0), g, w,
                                 PrivacySpec(sensitivity=1.0, epsilon=1.0),
                                 neighborhood="l7")


class TestInputValidation:
    def test_disconnected(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        w = WeightAssignment(weights=np.array([1.0, 1.0]), sensitivity=1.0)
        spec = PrivacySpec(sensitivity=1.0, rho=0.1)
        for fn in (fast_pamst, pamst_baseline):
            with pytest.raises(DisconnectedGraph):
                fn(RngStream(0), g, w, spec)
        with pytest.raises(DisconnectedGraph):
            post_process_gaussian(RngStream(0), g, w, spec)

    def test_bad_start_vertex(self):
        g, w = triangle()
        with pytest.raises(InvalidParam):
            fast_pamst(RngStream(0), g, w, PrivacySpec(sensitivity=1.0, rho=0.1),
                       start_vertex=5)
