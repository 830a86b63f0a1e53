"""Private selection: naive noisy argmax and its fast simulations.

The naive mechanism draws one exponential noise term per candidate and
releases the argmax. The grouped variant draws a single max-of-exponentials
term per group of equal-score candidates, and the fast variant additionally
simulates all candidates far below the maximum through a Binomial count of
threshold exceedances, so the work per call is proportional to the number
of top groups plus the (rare) exceedances instead of the candidate count.

Scores are sign-agnostic here; MST callers pass negated weights so that
"argmax" selects the lightest edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import EmptyCandidates, InvalidParam
from .graph import RunCounters
from .noise import (
    RngStream,
    sample_binomial,
    sample_distinct_indices,
    sample_exp,
    sample_max_exp,
    sample_uniform_index,
)

# Snap tolerance for scores that are intended to sit exactly on a grid
# boundary but picked up float error on the way in.
_GRID_SNAP = 1e-9


def discretize(score: float, s: float) -> int:
    """Largest integer g with g*s <= score (round toward -inf)."""
    if not s > 0 or not math.isfinite(s):
        raise InvalidParam(f"step must be positive and finite, got {s}")
    if not math.isfinite(score):
        raise InvalidParam(f"score must be finite, got {score}")
    q = score / s
    g = math.floor(q)
    if q - g > 1.0 - _GRID_SNAP:
        g += 1
    return g


class Candidate(NamedTuple):
    edge_id: int
    score: float


@dataclass(frozen=True)
class Group:
    key: int  # discretized group key, or the raw-score rank for raw groups
    score: float  # shared base score of all members
    members: tuple


@dataclass(frozen=True)
class GroupPartition:
    """Groups of equal-score candidates, ordered by strictly decreasing score."""

    groups: tuple
    step: Optional[float] = None  # set when scores are on the s-grid

    @staticmethod
    def from_candidates(candidates, s: float) -> "GroupPartition":
        """Partition by discretized score; group score is key * s."""
        if not candidates:
            raise EmptyCandidates("no candidates to partition")
        buckets: dict[int, list[int]] = {}
        for c in candidates:
            buckets.setdefault(discretize(c.score, s), []).append(c.edge_id)
        groups = tuple(
            Group(key=k, score=k * s, members=tuple(sorted(buckets[k])))
            for k in sorted(buckets, reverse=True)
        )
        return GroupPartition(groups=groups, step=s)

    @staticmethod
    def from_equal_scores(candidates) -> "GroupPartition":
        """Partition by exact raw score (no discretization)."""
        if not candidates:
            raise EmptyCandidates("no candidates to partition")
        buckets: dict[float, list[int]] = {}
        for c in candidates:
            buckets.setdefault(float(c.score), []).append(c.edge_id)
        scores = sorted(buckets, reverse=True)
        groups = tuple(
            Group(key=-i, score=sc, members=tuple(sorted(buckets[sc])))
            for i, sc in enumerate(scores)
        )
        return GroupPartition(groups=groups, step=None)

    @property
    def size(self) -> int:
        return sum(len(g.members) for g in self.groups)


@dataclass(frozen=True)
class RnmParams:
    lam: float  # exponential noise rate
    sensitivity: float
    step: float
    threshold: float  # must be a positive multiple of step
    tail_enabled: bool = True

    def __post_init__(self):
        if not self.lam > 0 or not self.sensitivity > 0 or not self.step > 0:
            raise InvalidParam("lam, sensitivity and step must all be positive")
        if self.tail_enabled:
            if not self.threshold > 0:
                raise InvalidParam(f"threshold must be > 0, got {self.threshold}")
            ratio = self.threshold / self.step
            if abs(ratio - round(ratio)) > 1e-6:
                raise InvalidParam(
                    f"threshold {self.threshold} is not a multiple of step {self.step}"
                )

    @property
    def threshold_steps(self) -> int:
        return int(round(self.threshold / self.step))


def _better(noisy_a, score_a, id_a, noisy_b, score_b, id_b) -> bool:
    """True if (noisy_a, score_a, id_a) beats b under the tie-break order."""
    if noisy_a != noisy_b:
        return noisy_a > noisy_b
    if score_a != score_b:
        return score_a > score_b
    return id_a < id_b


def rnm_naive(rng: RngStream, candidates, lam: float,
              counters: RunCounters | None = None) -> int:
    """Reference mechanism: one Exp(lam) draw per candidate, release argmax."""
    if not candidates:
        raise EmptyCandidates("rnm_naive on empty candidate set")
    scores = np.array([c.score for c in candidates], dtype=np.float64)
    noise = -np.log1p(-rng.gen.random(len(candidates))) / lam
    noisy = scores + noise
    if counters is not None:
        counters.samples_drawn += len(candidates)
    best = 0
    for i in range(1, len(candidates)):
        if _better(noisy[i], scores[i], candidates[i].edge_id,
                   noisy[best], scores[best], candidates[best].edge_id):
            best = i
    return candidates[best].edge_id


def rnm_grouped(rng: RngStream, partition: GroupPartition, lam: float,
                counters: RunCounters | None = None) -> int:
    """One max-of-exponentials draw per group; uniform member of the winner."""
    if not partition.groups:
        raise EmptyCandidates("rnm_grouped on empty partition")
    best_group = None
    best_noisy = -math.inf
    for group in partition.groups:
        noisy = group.score + sample_max_exp(rng, len(group.members), lam)
        if counters is not None:
            counters.samples_drawn += 1
        # Groups are listed by decreasing score, so strict > implements the
        # (larger base score, then first-listed) tie-break.
        if noisy > best_noisy:
            best_noisy = noisy
            best_group = group
    return best_group.members[sample_uniform_index(rng, len(best_group.members))]


def sample_bottom_tail(rng: RngStream, bottom_size: int, lam: float, M: float,
                       counters: RunCounters | None = None):
    """Simulate which of `bottom_size` Exp(lam) noise terms exceed M.

    Returns (rank, noise) pairs where ranks form a uniform k-subset of
    [0, bottom_size) with k ~ Bin(bottom_size, e^{-lam*M}), and each noise
    value is an independent M + Exp(lam) draw. Elements not returned are
    implicitly clipped at M and never materialized.
    """
    if bottom_size < 0:
        raise InvalidParam(f"bottom_size must be >= 0, got {bottom_size}")
    if not M > 0:
        raise InvalidParam(f"M must be > 0, got {M}")
    if bottom_size == 0:
        return []
    k = sample_binomial(rng, bottom_size, math.exp(-lam * M))
    if counters is not None:
        counters.samples_drawn += 1 + k
    ranks = sorted(sample_distinct_indices(rng, bottom_size, k))
    return [(rank, M + sample_exp(rng, lam)) for rank in ranks]


def rnm_fast(rng: RngStream, partition: GroupPartition, params: RnmParams,
             counters: RunCounters | None = None) -> int:
    """Full simulation: grouped max for top groups, Binomial tail for the rest.

    The output distribution is exactly that of `rnm_naive` run on the
    discretized scores: unmaterialized bottom candidates are clipped at
    score + M, which is strictly below the top maximum plus its nonnegative
    noise, so they can never win.
    """
    if not partition.groups:
        raise EmptyCandidates("rnm_fast on empty partition")
    if partition.step is None:
        raise InvalidParam("rnm_fast needs a partition built on the step grid")
    t = params.threshold_steps
    max_key = partition.groups[0].key

    best_noisy = -math.inf
    best_score = 0.0
    best_group = None  # winner is a whole top group
    best_member = -1  # or a single materialized bottom member

    bottom_groups = []
    for group in partition.groups:
        if params.tail_enabled and group.key < max_key - t:
            bottom_groups.append(group)
            continue
        noisy = group.score + sample_max_exp(rng, len(group.members), params.lam)
        if counters is not None:
            counters.samples_drawn += 1
        if best_group is None or _better(noisy, group.score, -1,
                                         best_noisy, best_score, -1):
            best_noisy, best_score, best_group = noisy, group.score, group

    if bottom_groups:
        ends = np.cumsum([len(g.members) for g in bottom_groups])
        hits = sample_bottom_tail(rng, int(ends[-1]), params.lam,
                                  params.threshold, counters)
        for rank, noise in hits:
            gi = int(np.searchsorted(ends, rank, side="right"))
            offset = rank - (0 if gi == 0 else int(ends[gi - 1]))
            group = bottom_groups[gi]
            member = group.members[offset]
            noisy = group.score + noise
            if _better(noisy, group.score, member, best_noisy, best_score,
                       -1 if best_group is not None else best_member):
                best_noisy, best_score = noisy, group.score
                best_group, best_member = None, member

    if best_group is not None:
        return best_group.members[
            sample_uniform_index(rng, len(best_group.members))]
    return best_member


def per_step_privacy(lam: float, sensitivity: float, s: float) -> tuple[float, float]:
    """Pure-DP and zCDP cost of one discretized noisy-argmax release."""
    if not lam > 0 or not sensitivity > 0 or not s > 0:
        raise InvalidParam("lam, sensitivity and s must all be positive")
    epsilon = 2.0 * lam * (sensitivity + s)
    return epsilon, epsilon * epsilon / 2.0
