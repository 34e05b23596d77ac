"""Best-transfer heaps (one per ordered center pair) and penalty edge weights."""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .allotment import penalty_delta


@dataclass(frozen=True)
class MinEdge:
    src: int
    dst: int
    demand: int
    weight: int


class TransferHeapSet:
    """Min-heaps of ``(transfer_cost, demand, version)`` for every pair i != j.

    Entries are never removed eagerly. Moving or deleting a demand bumps its
    version, which turns every older entry for it into garbage that is
    discarded the next time it reaches the top of a heap.
    """

    def __init__(self, k):
        self.k = k
        self.heaps = [[[] for _ in range(k)] for _ in range(k)]
        self.version = {}
        self.pushes = 0

    def push_demand(self, row, d, j):
        """Record that ``d`` now sits on ``j``: fill the k-1 heaps (j, l)."""
        ver = self.version.get(d, -1) + 1
        self.version[d] = ver
        base = row[j]
        out = self.heaps[j]
        for l in range(self.k):
            if l != j:
                heapq.heappush(out[l], (row[l] - base, d, ver))
        self.pushes += self.k - 1

    def discard(self, d):
        if d in self.version:
            self.version[d] += 1

    def top(self, i, j):
        heap = self.heaps[i][j]
        version = self.version
        while heap:
            w, d, ver = heap[0]
            if version.get(d) == ver:
                return heap[0]
            heapq.heappop(heap)
        return None

    def entry_count(self):
        return sum(len(h) for row in self.heaps for h in row)

    def compact(self):
        """Drop all stale entries (optional housekeeping)."""
        version = self.version
        for row in self.heaps:
            for idx, h in enumerate(row):
                live = [e for e in h if version.get(e[1]) == e[2]]
                heapq.heapify(live)
                row[idx] = live


def build_heaps(instance, allotment):
    heaps = TransferHeapSet(instance.k)
    for d in sorted(allotment.assign):
        heaps.push_demand(instance.cost[d], d, allotment.assign[d])
    return heaps


def min_transfer_edge(heaps, allotment, i, j):
    """Cheapest transfer of a demand currently on ``i`` over to ``j``."""
    if i == j:
        raise ValueError("min_transfer_edge needs two distinct centers")
    assign = allotment.assign
    heap = heaps.heaps[i][j]
    version = heaps.version
    while heap:
        w, d, ver = heap[0]
        if version.get(d) == ver and assign.get(d) == i:
            return MinEdge(i, j, d, w)
        heapq.heappop(heap)
    return None


def penalty_edge_weight(instance, allotment, i, j, occ=None):
    """``q_i(o_i + 1) - q_j(o_j)``; INF when ``i`` cannot take another unit."""
    if i == j:
        raise ValueError("penalty_edge_weight needs two distinct centers")
    return penalty_delta(instance, allotment.occupancy if occ is None else occ, i, j)


def update_after_move(heaps, instance, d, i, j):
    """Refresh heaps after ``d`` moved from ``i`` to ``j`` (i is implied stale)."""
    heaps.push_demand(instance.cost[d], d, j)


def brute_min_edge(instance, allotment, i, j):
    """Linear scan over members of ``i``; reference for the heap path."""
    best = None
    for d in allotment.members[i]:
        w = instance.cost[d][j] - instance.cost[d][i]
        if best is None or (w, d) < (best.weight, best.demand):
            best = MinEdge(i, j, d, w)
    return best
