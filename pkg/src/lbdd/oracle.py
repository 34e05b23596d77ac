"""Independent reference solvers: brute-force enumeration and min-cost flow.

Neither shares code with the loop-removal engine beyond the penalty
definitions on :class:`~lbdd.instance.ServiceCenter`.
"""

from __future__ import annotations

import heapq

import numpy as np

from .errors import TooLarge
from .instance import HARD_CAPACITY, INF, reduce_no_overload

DEFAULT_LIMIT = 2_000_000
_CHUNK = 1 << 15


def _penalty_table(center, n):
    """Cumulative penalty for occupancies 0..n plus a feasibility mask."""
    table = np.zeros(n + 1, dtype=np.int64)
    ok = np.ones(n + 1, dtype=bool)
    total = 0
    for t in range(1, n + 1):
        m = center.marginal(t)
        if m is INF:
            ok[t:] = False
            break
        total += m
        table[t] = total
    return table, ok


def _assignments(base, n, lo, hi):
    idx = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((hi - lo, n), dtype=np.int64)
    for d in range(n):
        out[:, d] = idx % base
        idx //= base
    return out


def exhaustive_solve(instance, limit=DEFAULT_LIMIT):
    """Minimum objective over every assignment, with one optimal assignment.

    Overload mode enumerates all k**n assignments. Hard-capacity mode also
    allows leaving demands unassigned, keeps only assignments that respect
    every capacity and place ``min(n, total capacity)`` demands, and minimizes
    the real assignment cost; unassigned demands map to ``None``.
    """
    k, n = instance.k, instance.n
    hard = instance.mode == HARD_CAPACITY
    base = k + 1 if hard else k
    total = base**n
    if total > limit:
        raise TooLarge(f"{base}**{n} = {total} assignments exceeds limit {limit}")
    if n == 0:
        return 0, []
    cost = np.array(instance.cost, dtype=np.int64)
    if hard:
        cost = np.hstack([cost, np.zeros((n, 1), dtype=np.int64)])
        caps = instance.capacities()
        target = min(n, sum(caps))
    else:
        tables = [_penalty_table(c, n) for c in instance.centers]
    rows = np.arange(n)
    best_val, best_assign = None, None
    for lo in range(0, total, _CHUNK):
        hi = min(total, lo + _CHUNK)
        a = _assignments(base, n, lo, hi)
        val = cost[rows, a].sum(axis=1)
        ok = np.ones(hi - lo, dtype=bool)
        if hard:
            placed = np.zeros(hi - lo, dtype=np.int64)
            for j in range(k):
                occ = (a == j).sum(axis=1)
                ok &= occ <= caps[j]
                placed += occ
            ok &= placed == target
        else:
            for j, (table, feas) in enumerate(tables):
                occ = (a == j).sum(axis=1)
                ok &= feas[occ]
                val = val + table[occ]
        if not ok.any():
            continue
        val = np.where(ok, val, np.iinfo(np.int64).max)
        pos = int(np.argmin(val))
        if best_val is None or val[pos] < best_val:
            best_val = int(val[pos])
            best_assign = [int(x) for x in a[pos]]
    if best_val is None:
        return INF, None
    if hard:
        best_assign = [None if j == k else j for j in best_assign]
    return best_val, best_assign


class _FlowNetwork:
    def __init__(self, size):
        self.adj = [[] for _ in range(size)]

    def add_arc(self, u, v, cap, cost):
        self.adj[u].append([v, cap, cost, len(self.adj[v])])
        self.adj[v].append([u, 0, -cost, len(self.adj[u]) - 1])

    def min_cost_flow(self, s, t, want):
        """Successive shortest paths with Johnson potentials (costs start >= 0)."""
        size = len(self.adj)
        pot = [0] * size
        flow = cost = 0
        while flow < want:
            dist = [None] * size
            prev = [None] * size
            dist[s] = 0
            heap = [(0, s)]
            while heap:
                du, u = heapq.heappop(heap)
                if du != dist[u]:
                    continue
                pu = pot[u]
                for idx, (v, cap, c, _) in enumerate(self.adj[u]):
                    if cap <= 0:
                        continue
                    nd = du + c + pu - pot[v]
                    if dist[v] is None or nd < dist[v]:
                        dist[v] = nd
                        prev[v] = (u, idx)
                        heapq.heappush(heap, (nd, v))
            if dist[t] is None:
                break
            for v in range(size):
                if dist[v] is not None:
                    pot[v] += dist[v]
            v = t
            while v != s:
                u, idx = prev[v]
                arc = self.adj[u][idx]
                arc[1] -= 1
                self.adj[v][arc[3]][1] += 1
                cost += arc[2]
                v = u
            flow += 1
        return flow, cost


def mincost_flow_solve(instance):
    """Optimal objective via a unit-arc convex-cost flow network.

    Hard-capacity instances go through the virtual-center reduction; the
    returned value then counts only real-center assignment costs.
    """
    hard = instance.mode == HARD_CAPACITY
    inst = reduce_no_overload(instance) if hard else instance
    k, n = inst.k, inst.n
    if n == 0:
        return 0
    src, sink = 0, n + k + 1
    net = _FlowNetwork(n + k + 2)
    for d, row in enumerate(inst.cost):
        net.add_arc(src, 1 + d, 1, 0)
        for j, c in enumerate(row):
            net.add_arc(1 + d, 1 + n + j, 1, c)
    for j, center in enumerate(inst.centers):
        node = 1 + n + j
        free = min(center.capacity, n)
        if free:
            net.add_arc(node, sink, free, 0)
        last = 0
        for t in range(free + 1, n + 1):
            m = center.marginal(t)
            if m is INF:
                break
            assert m >= last, f"center {j}: penalty expansion is not monotone"
            last = m
            net.add_arc(node, sink, 1, m)
    flow, cost = net.min_cost_flow(src, sink, n)
    assert flow == n, "flow network could not route every demand"
    if hard:
        vnode = 1 + n + inst.virtual_center
        # Residual arcs vnode -> demand carry capacity 1 exactly when used.
        on_virtual = sum(arc[1] for arc in net.adj[vnode] if 1 <= arc[0] <= n)
        cost -= inst.cost[0][inst.virtual_center] * on_virtual
    return cost
