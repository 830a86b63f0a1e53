"""Private MST algorithms and their privacy-budget accounting.

All algorithms run Prim-Jarnik over negated weights, so every selection
step is an approximate argmax over the current cut:

* ``fast_pamst``   - grouped/tail-simulated noisy argmax over the layered
                     cut queue; the per-step output law is exactly naive
                     noisy argmax on the discretized scores.
* ``pamst_baseline`` - naive noisy argmax over all cut edges on raw weights.
* ``post_process_gaussian`` / ``post_process_laplace`` - noise the whole
  weight vector once and run the exact MST on the result.

Per-step budgets are a uniform 1/(n-1) split of the requested total, so
the ledger composes to exactly the requested rho (or epsilon).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cutqueue import CutQueue
from .errors import DisconnectedGraph, InvalidParam
from .graph import Graph, RunCounters, TreeResult, WeightAssignment, exact_mst, tree_weight
from .noise import RngStream, sample_max_exp, sample_uniform_index
from .rnm import per_step_privacy, sample_bottom_tail

ZCDP = "zCDP"
PURE_DP = "pureDP"


@dataclass(frozen=True)
class PrivacySpec:
    """Privacy budget, sensitivity, and the selection discretization step."""

    sensitivity: float
    rho: Optional[float] = None
    epsilon: Optional[float] = None
    mu: Optional[float] = None  # failure probability for utility reporting
    step: Optional[float] = None  # defaults to sensitivity
    # Bottom-threshold constant: the tail cutoff is threshold_constant *
    # ln(n) / lambda, which keeps the chance of any tail exceedance during
    # a whole run near n^-2.
    threshold_constant: float = 4.0

    def __post_init__(self):
        if (self.rho is None) == (self.epsilon is None):
            raise InvalidParam("set exactly one of rho (zCDP) or epsilon (pure DP)")
        if self.rho is not None and not self.rho > 0:
            raise InvalidParam(f"rho must be > 0, got {self.rho}")
        if self.epsilon is not None and not self.epsilon > 0:
            raise InvalidParam(f"epsilon must be > 0, got {self.epsilon}")
        if not self.sensitivity > 0:
            raise InvalidParam(f"sensitivity must be > 0, got {self.sensitivity}")
        if self.mu is not None and not 0 < self.mu < 1:
            raise InvalidParam(f"mu must be in (0,1), got {self.mu}")
        if self.step is not None and not self.step > 0:
            raise InvalidParam(f"step must be > 0, got {self.step}")

    @property
    def mode(self) -> str:
        return ZCDP if self.rho is not None else PURE_DP

    def effective_step(self) -> float:
        return self.step if self.step is not None else self.sensitivity

    def effective_mu(self, n: int) -> float:
        return self.mu if self.mu is not None else 1.0 / n


@dataclass
class BudgetLedger:
    """Per-step privacy spend and its composition across all steps."""

    mode: str
    lam: float
    eps_step: float
    rho_step: float
    steps: int
    total_rho: float = 0.0
    total_eps: float = 0.0
    utility_bound_value: float = math.nan

    @staticmethod
    def build(mode: str, lam: float, sensitivity: float, step: float,
              steps: int, bound: float = math.nan) -> "BudgetLedger":
        eps_step, rho_step = per_step_privacy(lam, sensitivity, step)
        return BudgetLedger(
            mode=mode, lam=lam, eps_step=eps_step, rho_step=rho_step,
            steps=steps, total_rho=rho_step * steps, total_eps=eps_step * steps,
            utility_bound_value=bound)


def utility_bound(n: int, rho: float, sensitivity: float, mu: float) -> float:
    """High-probability cap on released-tree weight minus optimal weight."""
    if n < 2 or not rho > 0 or not sensitivity > 0 or not 0 < mu < 1:
        raise InvalidParam("need n >= 2, rho > 0, sensitivity > 0, mu in (0,1)")
    return 4.0 * (n - 1) * sensitivity * math.sqrt(n / (2.0 * rho)) \
        * math.log(n * n / mu)


def _per_step_lambda(spec: PrivacySpec, n: int, discretized: bool) -> float:
    """Noise rate so n-1 composed selections spend exactly the budget.

    Discretized selection pays 2(sensitivity + step) per step; raw-score
    selection pays 4*sensitivity (two-sided score perturbation), so both
    use the same rate when step == sensitivity.
    """
    if discretized:
        spread = spec.sensitivity + spec.effective_step()
    else:
        spread = 2.0 * spec.sensitivity
    if spec.mode == ZCDP:
        eps_step = math.sqrt(2.0 * spec.rho / (n - 1))
    else:
        eps_step = spec.epsilon / (n - 1)
    return eps_step / (2.0 * spread)


def _check_input(g: Graph) -> None:
    if g.n < 2:
        raise InvalidParam(f"need n >= 2, got {g.n}")
    if not g.is_connected():
        raise DisconnectedGraph("graph is not connected")


def _finish(g, w, tree, counters, opt_weight, t0) -> TreeResult:
    counters.elapsed_ns = time.perf_counter_ns() - t0
    true_weight = tree_weight(w, tree)
    if opt_weight is None:
        opt_weight = exact_mst(g, w).true_weight
    return TreeResult(tree_edges=tree, true_weight=true_weight,
                      opt_weight=opt_weight, error=true_weight - opt_weight,
                      counters=counters)


def fast_pamst(rng: RngStream, g: Graph, w: WeightAssignment,
               spec: PrivacySpec, start_vertex: int = 0,
               noiseless: bool = False, opt_weight: Optional[float] = None,
               core_cls=None) -> tuple[TreeResult, BudgetLedger]:
    """Prim-Jarnik with the fast simulated noisy argmax at every step."""
    _check_input(g)
    if not 0 <= start_vertex < g.n:
        raise InvalidParam(f"start vertex {start_vertex} out of range")
    t0 = time.perf_counter_ns()
    n = g.n
    s = spec.effective_step()
    lam = _per_step_lambda(spec, n, discretized=True)
    # Tail threshold: smallest multiple of s at or above c*ln(n)/lam.
    M = max(1, math.ceil(spec.threshold_constant * math.log(max(n, 2)) / (lam * s))) * s
    t_steps = int(round(M / s))

    bound = utility_bound(n, spec.rho, spec.sensitivity, spec.effective_mu(n)) \
        if spec.mode == ZCDP else math.nan
    ledger = BudgetLedger.build(spec.mode, lam, spec.sensitivity, s,
                                steps=n - 1, bound=bound)

    q = CutQueue(g, w, s, negate=True, core_cls=core_cls)
    counters = RunCounters()
    visited = np.zeros(n, dtype=bool)
    visited[start_vertex] = True
    cur = start_vertex
    tree: list[int] = []
    eu, ev = g.edge_u, g.edge_v

    for _ in range(n - 1):
        for eid in g.adj[cur]:
            eid = int(eid)
            other = int(eu[eid]) if int(ev[eid]) == cur else int(ev[eid])
            if not visited[other]:
                q.insert(eid)
            elif q.is_active(eid):
                q.delete(eid)

        winner = _select_noisy_max(rng, q, lam, M, t_steps, counters, noiseless)
        q.delete(winner)
        nxt = int(eu[winner]) if visited[int(ev[winner])] else int(ev[winner])
        visited[nxt] = True
        tree.append(winner)
        cur = nxt

    counters.comparisons = q.comparisons
    return _finish(g, w, tree, counters, opt_weight, t0), ledger


def _select_noisy_max(rng, q: CutQueue, lam, M, t_steps, counters, noiseless):
    top = q.max_active_group()
    if top is None:
        raise DisconnectedGraph("no active cut edge; graph is not connected")
    max_key, _ = top
    s = q.step

    if noiseless:
        # Zero-noise limit: the max group wins; lowest edge id breaks ties.
        count, fetch = q.group_members_active(max_key)
        return min(fetch(i) for i in range(count))

    thresh_key = max_key - t_steps
    best_noisy = -math.inf
    best_score = 0.0
    best_key = None
    best_member = -1
    top_total = 0
    for key, count in q.active_groups_at_or_above(thresh_key):
        top_total += count
        noisy = key * s + sample_max_exp(rng, count, lam)
        counters.samples_drawn += 1
        if noisy > best_noisy:  # groups come in decreasing score order
            best_noisy, best_score, best_key = noisy, key * s, key

    bottom_total = q.total_active - top_total
    if bottom_total > 0:
        for rank, noise in sample_bottom_tail(rng, bottom_total, lam, M, counters):
            counters.bottom_hits += 1
            e = q.select_active_by_rank(thresh_key - 1, rank)
            score = q.score_of_edge(e)
            noisy = score + noise
            if noisy > best_noisy or (noisy == best_noisy and score > best_score):
                best_noisy, best_score = noisy, score
                best_key, best_member = None, e

    if best_key is not None:
        count, fetch = q.group_members_active(best_key)
        return fetch(sample_uniform_index(rng, count))
    return best_member


def pamst_baseline(rng: RngStream, g: Graph, w: WeightAssignment,
                   spec: PrivacySpec, start_vertex: int = 0,
                   noiseless: bool = False,
                   opt_weight: Optional[float] = None
                   ) -> tuple[TreeResult, BudgetLedger]:
    """Prim-Jarnik drawing one exponential noise term per cut edge and step."""
    _check_input(g)
    t0 = time.perf_counter_ns()
    n = g.n
    lam = _per_step_lambda(spec, n, discretized=False)
    ledger = BudgetLedger(
        mode=spec.mode, lam=lam, eps_step=4.0 * lam * spec.sensitivity,
        rho_step=(4.0 * lam * spec.sensitivity) ** 2 / 2.0, steps=n - 1)
    ledger.total_eps = ledger.eps_step * ledger.steps
    ledger.total_rho = ledger.rho_step * ledger.steps

    counters = RunCounters()
    scores = -w.weights
    active = np.zeros(g.m, dtype=bool)
    visited = np.zeros(n, dtype=bool)
    visited[start_vertex] = True
    cur = start_vertex
    tree: list[int] = []
    eu, ev = g.edge_u, g.edge_v

    for _ in range(n - 1):
        for eid in g.adj[cur]:
            eid = int(eid)
            other = int(eu[eid]) if int(ev[eid]) == cur else int(ev[eid])
            active[eid] = not visited[other]
        ids = np.flatnonzero(active)
        if len(ids) == 0:
            raise DisconnectedGraph("empty cut; graph is not connected")
        if noiseless:
            noisy = scores[ids]
        else:
            noisy = scores[ids] - np.log1p(-rng.gen.random(len(ids))) / lam
            counters.samples_drawn += len(ids)
        winner = int(ids[np.argmax(noisy)])
        active[winner] = False
        nxt = int(eu[winner]) if visited[int(ev[winner])] else int(ev[winner])
        visited[nxt] = True
        tree.append(winner)
        cur = nxt

    return _finish(g, w, tree, counters, opt_weight, t0), ledger


def post_process_gaussian(rng: RngStream, g: Graph, w: WeightAssignment,
                          spec: PrivacySpec,
                          opt_weight: Optional[float] = None) -> TreeResult:
    """Gaussian noise on every weight, then an exact MST on the noisy graph."""
    _check_input(g)
    if spec.mode != ZCDP:
        raise InvalidParam("gaussian post-processing needs a zCDP budget (rho)")
    t0 = time.perf_counter_ns()
    sigma = g.n * math.sqrt(spec.sensitivity / (2.0 * spec.rho))
    noisy = WeightAssignment(
        weights=w.weights + rng.gen.normal(0.0, sigma, g.m),
        sensitivity=spec.sensitivity)
    counters = RunCounters(samples_drawn=g.m)
    tree = exact_mst(g, noisy).tree_edges
    return _finish(g, w, tree, counters, opt_weight, t0)


def post_process_laplace(rng: RngStream, g: Graph, w: WeightAssignment,
                         spec: PrivacySpec, neighborhood: str = "linf",
                         opt_weight: Optional[float] = None) -> TreeResult:
    """Laplace noise on every weight, then an exact MST on the noisy graph."""
    _check_input(g)
    if spec.mode != PURE_DP:
        raise InvalidParam("laplace post-processing needs a pure-DP budget (epsilon)")
    if neighborhood not in ("linf", "l1"):
        raise InvalidParam(f"unknown neighborhood {neighborhood!r}")
    t0 = time.perf_counter_ns()
    scale = spec.sensitivity / spec.epsilon
    if neighborhood == "linf":
        scale *= g.n * g.n
    noisy = WeightAssignment(
        weights=w.weights + rng.gen.laplace(0.0, scale, g.m),
        sensitivity=spec.sensitivity)
    counters = RunCounters(samples_drawn=g.m)
    tree = exact_mst(g, noisy).tree_edges
    return _finish(g, w, tree, counters, opt_weight, t0)
