"""Layered priority structure over discretized cut edges.

Two interchangeable cores implement the hot kernel: a Cython extension
(``dpmst.cutqueue._core``) and a pure-Python fallback
(``dpmst.cutqueue._pure``). The compiled core is preferred at import time;
set ``DPMST_PURE=1`` to force the fallback. ``benchmarks/bench_backends.py``
compares the two.
"""

from __future__ import annotations

import math
import os

import numpy as np

from ..errors import (
    AlreadyActive,
    InvalidParam,
    NotActive,
    RankOutOfRange,
    UnknownEdge,
    UnknownGroup,
)
from ..graph import Graph, WeightAssignment
from .. import rnm
from ._pure import PureQueueCore

try:
    from ._core import ExtQueueCore
except ImportError:  # extension not built; fall back to pure Python
    ExtQueueCore = None

if ExtQueueCore is None or os.environ.get("DPMST_PURE") == "1":
    DefaultCore = PureQueueCore
else:
    DefaultCore = ExtQueueCore

HAVE_EXTENSION = ExtQueueCore is not None


class CutQueue:
    """All edges of a graph, grouped by discretized score, with O(1)
    insert/delete and O(g^(1/4))-comparison max/count/rank queries.

    Edges start out inactive; the MST driver activates exactly the current
    cut. Scores are ``discretize(w_e, s)`` or ``discretize(-w_e, s)`` when
    ``negate`` is set (the MST convention: argmax picks the lightest edge).
    """

    def __init__(self, g: Graph, w: WeightAssignment, s: float,
                 negate: bool = True, core_cls=None):
        if not s > 0 or not math.isfinite(s):
            raise InvalidParam(f"step must be positive and finite, got {s}")
        self.m = g.m
        self.step = float(s)
        self.negate = bool(negate)
        weights = -w.weights if negate else w.weights
        keys = np.fromiter(
            (rnm.discretize(float(x), s) for x in weights),
            dtype=np.int64, count=g.m)
        self._core = (core_cls or DefaultCore)(keys)
        self.group_keys = np.asarray(self._core.group_keys)
        self._key_index = {int(k): j for j, k in enumerate(self.group_keys)}

    @property
    def backend(self) -> str:
        return self._core.backend

    @property
    def total_active(self) -> int:
        return int(self._core.total_active)

    @property
    def comparisons(self) -> int:
        return int(self._core.comparisons)

    @property
    def swaps(self) -> int:
        return int(self._core.swaps)

    @property
    def last_op_work(self) -> int:
        return int(self._core.last_op_work)

    def key_of_edge(self, e: int) -> int:
        self._check_edge(e)
        return int(np.asarray(self._core.keys)[e])

    def score_of_edge(self, e: int) -> float:
        return self.key_of_edge(e) * self.step

    def _check_edge(self, e: int) -> None:
        if not 0 <= e < self.m:
            raise UnknownEdge(f"edge id {e}")

    def insert(self, e: int) -> None:
        self._check_edge(e)
        if not self._core.insert(e):
            raise AlreadyActive(f"edge {e} is already active")

    def delete(self, e: int) -> None:
        self._check_edge(e)
        if not self._core.delete(e):
            raise NotActive(f"edge {e} is not active")

    def is_active(self, e: int) -> bool:
        self._check_edge(e)
        return bool(self._core.is_active(e))

    # Group indices run over strictly decreasing keys, so index 0 is the
    # largest key and "key <= key_hi" is a suffix of the index range.
    def _first_index_at_or_below(self, key_hi: int) -> int:
        return int(np.searchsorted(-self.group_keys, -key_hi, side="left"))

    def _last_index_at_or_above(self, key_lo: int) -> int:
        return int(np.searchsorted(-self.group_keys, -key_lo, side="right")) - 1

    def max_active_group(self):
        """(group key, active count) of the largest active key, or None."""
        j = self._core.max_index()
        if j < 0:
            return None
        return int(self.group_keys[j]), int(np.asarray(self._core.group_active)[j])

    def active_range_count(self, key_lo, key_hi) -> int:
        """Active edges with group key in [key_lo, key_hi]."""
        if key_lo > key_hi:
            raise InvalidParam(f"key_lo {key_lo} > key_hi {key_hi}")
        j_lo = self._first_index_at_or_below(int(min(key_hi, 2 ** 62)))
        j_hi = self._last_index_at_or_above(int(max(key_lo, -(2 ** 62))))
        if j_lo > j_hi:
            return 0
        return int(self._core.count_range(j_lo, j_hi))

    def select_active_by_rank(self, key_hi, rank: int) -> int:
        """rank-th active edge (structure order) among keys <= key_hi."""
        if rank < 0:
            raise RankOutOfRange(f"rank {rank}")
        j_start = self._first_index_at_or_below(int(min(key_hi, 2 ** 62)))
        e = self._core.select_rank(j_start, rank)
        if e < 0:
            raise RankOutOfRange(f"rank {rank} exceeds active count below key {key_hi}")
        return int(e)

    def group_members_active(self, key: int):
        """(active count, fetch) for one group; fetch(i) is O(1)."""
        j = self._key_index.get(int(key))
        if j is None:
            raise UnknownGroup(f"group key {key}")
        count = int(np.asarray(self._core.group_active)[j])

        def fetch(i: int, _j=j, _count=count) -> int:
            if not 0 <= i < _count:
                raise RankOutOfRange(f"offset {i} in group of {_count} active")
            return int(self._core.group_fetch(_j, i))

        return count, fetch

    def active_groups_at_or_above(self, key_threshold: int):
        """(key, active count) for every active group with key >= threshold,
        in decreasing key order. Cost is linear in the directory slice."""
        j_max = self._core.max_index()
        if j_max < 0:
            return []
        j_end = self._last_index_at_or_above(int(key_threshold))
        pairs = self._core.nonempty_groups_between(j_max, j_end)
        return [(int(self.group_keys[j]), c) for j, c in pairs]

    def audit(self) -> bool:
        """Recompute every structural invariant from scratch."""
        c = self._core
        m, g = self.m, int(c.g)
        order = np.asarray(c.order)
        pos = np.asarray(c.pos)
        keys = np.asarray(c.keys)
        begin = np.asarray(c.group_begin)
        end = np.asarray(c.group_end)
        active = np.asarray(c.group_active)
        if sorted(order.tolist()) != list(range(m)):
            return False
        if not np.array_equal(pos[order], np.arange(m)):
            return False
        if g and not np.all(np.diff(self.group_keys) < 0):
            return False
        total = 0
        for j in range(g):
            if not 0 <= active[j] <= end[j] - begin[j]:
                return False
            interval = order[begin[j]:end[j]]
            if not np.all(keys[interval] == self.group_keys[j]):
                return False
            total += int(active[j])
        if total != int(c.total_active):
            return False
        b = int(c.block)
        for name, width in (("cnt1", b), ("cnt2", b * b), ("cnt3", b ** 3)):
            blocks = np.asarray(getattr(c, name))
            for i in range(len(blocks)):
                expect = int(active[i * width:(i + 1) * width].sum())
                if int(blocks[i]) != expect:
                    return False
        return True
