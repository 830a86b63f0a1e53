"""Pure-Python core of the layered cut queue.

Holds all m edges sorted by descending group key (ties by edge id).
Each group owns a fixed interval of the array; active edges are packed at
the left of their interval, so insert/delete is a single local swap plus
four counter bumps. Max/count/rank queries walk a four-level block
decomposition over the g groups (block size ceil(g^(1/4))), giving
O(g^(1/4)) comparisons per query.

The Cython core in ``_core.pyx`` implements the identical interface and
state layout; keep the two in sync.
"""

from __future__ import annotations

import math

import numpy as np


class PureQueueCore:
    backend = "pure"

    def __init__(self, keys: np.ndarray):
        m = len(keys)
        self.keys = np.asarray(keys, dtype=np.int64)
        self.order = np.lexsort((np.arange(m), -self.keys)).astype(np.int64)
        self.pos = np.empty(m, dtype=np.int64)
        self.pos[self.order] = np.arange(m)

        sorted_keys = self.keys[self.order]
        group_starts = np.flatnonzero(
            np.diff(sorted_keys, prepend=sorted_keys[0] + 1) != 0)
        self.group_keys = sorted_keys[group_starts]  # strictly decreasing
        self.group_begin = group_starts.astype(np.int64)
        self.group_end = np.append(group_starts[1:], m).astype(np.int64)
        g = len(self.group_keys)
        self.g = g
        self.edge_group = np.empty(m, dtype=np.int64)
        for j in range(g):
            self.edge_group[self.order[self.group_begin[j]:self.group_end[j]]] = j

        self.group_active = np.zeros(g, dtype=np.int64)
        b = max(2, math.ceil(g ** 0.25))
        self.block = b
        self.cnt1 = np.zeros((g + b - 1) // b, dtype=np.int64)
        self.cnt2 = np.zeros((g + b * b - 1) // (b * b), dtype=np.int64)
        self.cnt3 = np.zeros((g + b ** 3 - 1) // b ** 3, dtype=np.int64)
        self.total_active = 0

        self.comparisons = 0
        self.swaps = 0
        self.last_op_work = 0

    # -- updates ---------------------------------------------------------

    def is_active(self, e: int) -> bool:
        j = self.edge_group[e]
        return self.pos[e] < self.group_begin[j] + self.group_active[j]

    def _swap(self, i: int, k: int) -> None:
        a, c = self.order[i], self.order[k]
        self.order[i], self.order[k] = c, a
        self.pos[a], self.pos[c] = k, i
        self.swaps += 1

    def insert(self, e: int) -> bool:
        """Activate edge e; returns False if it was already active."""
        j = self.edge_group[e]
        target = self.group_begin[j] + self.group_active[j]
        if self.pos[e] < target:
            return False
        self._swap(self.pos[e], target)
        self.group_active[j] += 1
        b = self.block
        self.cnt1[j // b] += 1
        self.cnt2[j // (b * b)] += 1
        self.cnt3[j // b ** 3] += 1
        self.total_active += 1
        self.last_op_work = 5
        return True

    def delete(self, e: int) -> bool:
        """Deactivate edge e; returns False if it was not active."""
        j = self.edge_group[e]
        last = self.group_begin[j] + self.group_active[j] - 1
        if self.pos[e] > last:
            return False
        self._swap(self.pos[e], last)
        self.group_active[j] -= 1
        b = self.block
        self.cnt1[j // b] -= 1
        self.cnt2[j // (b * b)] -= 1
        self.cnt3[j // b ** 3] -= 1
        self.total_active -= 1
        self.last_op_work = 5
        return True

    # -- queries ---------------------------------------------------------

    def max_index(self) -> int:
        """Index of the first group (largest key) with an active edge, or -1."""
        if self.total_active == 0:
            return -1
        b = self.block
        b2, b3 = b * b, b ** 3
        j = 0
        g = self.g
        while j < g:
            self.comparisons += 1
            if j % b3 == 0 and j + b3 <= g and self.cnt3[j // b3] == 0:
                j += b3
            elif j % b2 == 0 and j + b2 <= g and self.cnt2[j // b2] == 0:
                j += b2
            elif j % b == 0 and j + b <= g and self.cnt1[j // b] == 0:
                j += b
            elif self.group_active[j] > 0:
                return j
            else:
                j += 1
        return -1

    def count_range(self, j_lo: int, j_hi: int) -> int:
        """Active edges in group-index range [j_lo, j_hi] inclusive."""
        b = self.block
        b2, b3 = b * b, b ** 3
        total = 0
        j = max(j_lo, 0)
        j_hi = min(j_hi, self.g - 1)
        while j <= j_hi:
            self.comparisons += 1
            if j % b3 == 0 and j + b3 - 1 <= j_hi:
                total += self.cnt3[j // b3]
                j += b3
            elif j % b2 == 0 and j + b2 - 1 <= j_hi:
                total += self.cnt2[j // b2]
                j += b2
            elif j % b == 0 and j + b - 1 <= j_hi:
                total += self.cnt1[j // b]
                j += b
            else:
                total += self.group_active[j]
                j += 1
        return int(total)

    def select_rank(self, j_start: int, rank: int) -> int:
        """rank-th active edge (array order) in groups j_start..g-1, or -1."""
        b = self.block
        b2, b3 = b * b, b ** 3
        remaining = rank
        j = max(j_start, 0)
        g = self.g
        while j < g:
            self.comparisons += 1
            if j % b3 == 0 and j + b3 <= g and self.cnt3[j // b3] <= remaining:
                remaining -= self.cnt3[j // b3]
                j += b3
            elif j % b2 == 0 and j + b2 <= g and self.cnt2[j // b2] <= remaining:
                remaining -= self.cnt2[j // b2]
                j += b2
            elif j % b == 0 and j + b <= g and self.cnt1[j // b] <= remaining:
                remaining -= self.cnt1[j // b]
                j += b
            elif self.group_active[j] <= remaining:
                remaining -= self.group_active[j]
                j += 1
            else:
                return int(self.order[self.group_begin[j] + remaining])
        return -1

    def nonempty_groups_between(self, j_start: int, j_end: int):
        """(group index, active count) for active groups in [j_start, j_end]."""
        out = []
        j_end = min(j_end, self.g - 1)
        for j in range(max(j_start, 0), j_end + 1):
            self.comparisons += 1
            if self.group_active[j] > 0:
                out.append((j, int(self.group_active[j])))
        return out

    def group_fetch(self, j: int, i: int) -> int:
        return int(self.order[self.group_begin[j] + i])
