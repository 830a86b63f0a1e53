# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled core of the layered cut queue.

State layout and semantics are identical to ``_pure.PureQueueCore``; the
wrapper and the audit routine treat both interchangeably. Keep in sync.
"""

import math

import numpy as np


cdef class ExtQueueCore:
    cdef public object keys, order, pos, edge_group
    cdef public object group_keys, group_begin, group_end, group_active
    cdef public object cnt1, cnt2, cnt3
    cdef public Py_ssize_t g, block
    cdef public long long total_active, comparisons, swaps, last_op_work

    cdef long long[::1] _keys, _order, _pos, _edge_group
    cdef long long[::1] _begin, _end, _active
    cdef long long[::1] _cnt1, _cnt2, _cnt3

    @property
    def backend(self):
        return "ext"

    def __init__(self, keys):
        cdef Py_ssize_t m = len(keys)
        cdef Py_ssize_t j
        self.keys = np.ascontiguousarray(keys, dtype=np.int64)
        order = np.lexsort((np.arange(m), -self.keys)).astype(np.int64)
        self.order = np.ascontiguousarray(order)
        pos = np.empty(m, dtype=np.int64)
        pos[order] = np.arange(m)
        self.pos = np.ascontiguousarray(pos)

        sorted_keys = self.keys[order]
        group_starts = np.flatnonzero(
            np.diff(sorted_keys, prepend=sorted_keys[0] + 1) != 0)
        self.group_keys = np.ascontiguousarray(sorted_keys[group_starts])
        self.group_begin = np.ascontiguousarray(group_starts, dtype=np.int64)
        self.group_end = np.ascontiguousarray(
            np.append(group_starts[1:], m), dtype=np.int64)
        cdef Py_ssize_t g = len(self.group_keys)
        self.g = g
        edge_group = np.empty(m, dtype=np.int64)
        for j in range(g):
            edge_group[order[self.group_begin[j]:self.group_end[j]]] = j
        self.edge_group = np.ascontiguousarray(edge_group)

        self.group_active = np.zeros(g, dtype=np.int64)
        cdef Py_ssize_t b = max(2, math.ceil(g ** 0.25))
        self.block = b
        self.cnt1 = np.zeros((g + b - 1) // b, dtype=np.int64)
        self.cnt2 = np.zeros((g + b * b - 1) // (b * b), dtype=np.int64)
        self.cnt3 = np.zeros((g + b * b * b - 1) // (b * b * b), dtype=np.int64)
        self.total_active = 0
        self.comparisons = 0
        self.swaps = 0
        self.last_op_work = 0

        self._keys = self.keys
        self._order = self.order
        self._pos = self.pos
        self._edge_group = self.edge_group
        self._begin = self.group_begin
        self._end = self.group_end
        self._active = self.group_active
        self._cnt1 = self.cnt1
        self._cnt2 = self.cnt2
        self._cnt3 = self.cnt3

    cpdef bint is_active(self, Py_ssize_t e):
        cdef Py_ssize_t j = self._edge_group[e]
        return self._pos[e] < self._begin[j] + self._active[j]

    cdef void _swap(self, Py_ssize_t i, Py_ssize_t k):
        cdef long long a = self._order[i]
        cdef long long c = self._order[k]
        self._order[i] = c
        self._order[k] = a
        self._pos[a] = k
        self._pos[c] = i
        self.swaps += 1

    cpdef bint insert(self, Py_ssize_t e):
        cdef Py_ssize_t j = self._edge_group[e]
        cdef Py_ssize_t target = self._begin[j] + self._active[j]
        cdef Py_ssize_t b = self.block
        if self._pos[e] < target:
            return False
        self._swap(self._pos[e], target)
        self._active[j] += 1
        self._cnt1[j // b] += 1
        self._cnt2[j // (b * b)] += 1
        self._cnt3[j // (b * b * b)] += 1
        self.total_active += 1
        self.last_op_work = 5
        return True

    cpdef bint delete(self, Py_ssize_t e):
        cdef Py_ssize_t j = self._edge_group[e]
        cdef Py_ssize_t last = self._begin[j] + self._active[j] - 1
        cdef Py_ssize_t b = self.block
        if self._pos[e] > last:
            return False
        self._swap(self._pos[e], last)
        self._active[j] -= 1
        self._cnt1[j // b] -= 1
        self._cnt2[j // (b * b)] -= 1
        self._cnt3[j // (b * b * b)] -= 1
        self.total_active -= 1
        self.last_op_work = 5
        return True

    cpdef Py_ssize_t max_index(self):
        cdef Py_ssize_t b = self.block
        cdef Py_ssize_t b2 = b * b
        cdef Py_ssize_t b3 = b2 * b
        cdef Py_ssize_t g = self.g
        cdef Py_ssize_t j = 0
        if self.total_active == 0:
            return -1
        while j < g:
            self.comparisons += 1
            if j % b3 == 0 and j + b3 <= g and self._cnt3[j // b3] == 0:
                j += b3
            elif j % b2 == 0 and j + b2 <= g and self._cnt2[j // b2] == 0:
                j += b2
            elif j % b == 0 and j + b <= g and self._cnt1[j // b] == 0:
                j += b
            elif self._active[j] > 0:
                return j
            else:
                j += 1
        return -1

    cpdef long long count_range(self, Py_ssize_t j_lo, Py_ssize_t j_hi):
        cdef Py_ssize_t b = self.block
        cdef Py_ssize_t b2 = b * b
        cdef Py_ssize_t b3 = b2 * b
        cdef long long total = 0
        cdef Py_ssize_t j = j_lo if j_lo > 0 else 0
        if j_hi > self.g - 1:
            j_hi = self.g - 1
        while j <= j_hi:
            self.comparisons += 1
            if j % b3 == 0 and j + b3 - 1 <= j_hi:
                total += self._cnt3[j // b3]
                j += b3
            elif j % b2 == 0 and j + b2 - 1 <= j_hi:
                total += self._cnt2[j // b2]
                j += b2
            elif j % b == 0 and j + b - 1 <= j_hi:
                total += self._cnt1[j // b]
                j += b
            else:
                total += self._active[j]
                j += 1
        return total

    cpdef long long select_rank(self, Py_ssize_t j_start, long long rank):
        cdef Py_ssize_t b = self.block
        cdef Py_ssize_t b2 = b * b
        cdef Py_ssize_t b3 = b2 * b
        cdef Py_ssize_t g = self.g
        cdef long long remaining = rank
        cdef Py_ssize_t j = j_start if j_start > 0 else 0
        while j < g:
            self.comparisons += 1
            if j % b3 == 0 and j + b3 <= g and self._cnt3[j // b3] <= remaining:
                remaining -= self._cnt3[j // b3]
                j += b3
            elif j % b2 == 0 and j + b2 <= g and self._cnt2[j // b2] <= remaining:
                remaining -= self._cnt2[j // b2]
                j += b2
            elif j % b == 0 and j + b <= g and self._cnt1[j // b] <= remaining:
                remaining -= self._cnt1[j // b]
                j += b
            elif self._active[j] <= remaining:
                remaining -= self._active[j]
                j += 1
            else:
                return self._order[self._begin[j] + remaining]
        return -1

    cpdef list nonempty_groups_between(self, Py_ssize_t j_start, Py_ssize_t j_end):
        cdef list out = []
        cdef Py_ssize_t j = j_start if j_start > 0 else 0
        if j_end > self.g - 1:
            j_end = self.g - 1
        while j <= j_end:
            self.comparisons += 1
            if self._active[j] > 0:
                out.append((j, <long long>self._active[j]))
            j += 1
        return out

    cpdef long long group_fetch(self, Py_ssize_t j, Py_ssize_t i):
        return self._order[self._begin[j] + i]
