"""Most-negative loop search on the anchored (split-center) graph.

The anchor center ``j`` is split into an "out" copy, which keeps node id ``j``
and only has outgoing edges, and an "in" copy with node id ``k`` that only has
incoming edges. A shortest ``j_out -> j_in`` path, with the two copies merged
back, is the cheapest loop starting at (or passing through) ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .allotment import CYCLE, PENALTY, make_loop, penalty_delta
from .errors import NegativeCycleOffAnchor
from .instance import INF
from .multigraph import min_transfer_edge

START = "start"
THROUGH = "through"

TRANSFER = "transfer"


@dataclass
class NegLoopGraph:
    """Edges are ``(u, v, weight, payload)``; payload is ``("transfer", d)``
    or ``("penalty", None)``. Node ``k`` is the anchor's "in" copy."""

    k: int
    anchor: int
    variant: str
    edges: list = field(default_factory=list)

    @property
    def source(self):
        return self.anchor

    @property
    def target(self):
        return self.k

    def center(self, node):
        return self.anchor if node == self.k else node


@dataclass
class ShortestPathResult:
    path: list
    cost: int | None
    feasible: bool
    rounds: int = 0


def _build(instance, allotment, heaps, j, variant, occ):
    k = instance.k
    occ = allotment.occupancy if occ is None else occ
    graph = NegLoopGraph(k, j, variant)
    edges = graph.edges
    for u in range(k):
        for v in range(k):
            if u == v:
                continue
            node_v = k if v == j else v
            use_penalty = variant == THROUGH or v == j
            best = None
            e = min_transfer_edge(heaps, allotment, u, v)
            if e is not None:
                best = (e.weight, (TRANSFER, e.demand))
            if use_penalty:
                w = penalty_delta(instance, occ, u, v)
                if w is not INF and (best is None or w < best[0]):
                    best = (w, (PENALTY, None))
            if best is not None:
                edges.append((u, node_v, best[0], best[1]))
    return graph


def build_negloop_start(instance, allotment, heaps, j, occ=None):
    return _build(instance, allotment, heaps, j, START, occ)


def build_negloop_through(instance, allotment, heaps, j, occ=None):
    return _build(instance, allotment, heaps, j, THROUGH, occ)


def _walk(layers, r, v):
    """Edges of the best walk with at most ``r`` edges ending at ``v``."""
    walk = []
    while r > 0:
        edge = layers[r][v]
        if edge is not None:
            walk.append(edge)
            v = edge[0]
        r -= 1
    walk.reverse()
    return walk


def _cycle_in(walk):
    nodes = [walk[0][0]] + [e[1] for e in walk]
    first_seen = {}
    for pos, node in enumerate(nodes):
        if node in first_seen:
            return walk[first_seen[node]:pos]
        first_seen[node] = pos
    raise AssertionError("walk longer than node count without a repeat")


def bellman_ford(graph, source=None, target=None):
    """Label-correcting shortest path; negative edge weights allowed.

    Rounds are Jacobi style (each uses the previous round's labels) and only
    strict improvements are recorded, so among minimum-cost paths the one with
    the fewest edges is returned.
    """
    source = graph.source if source is None else source
    target = graph.target if target is None else target
    n_nodes = graph.k + 1
    dist = [None] * n_nodes
    dist[source] = 0
    layers = [None]
    rounds = 0
    edges = graph.edges
    for r in range(1, n_nodes + 1):
        rounds = r
        new = list(dist)
        layer = [None] * n_nodes
        changed = None
        for edge in edges:
            du = dist[edge[0]]
            if du is None:
                continue
            cand = du + edge[2]
            dv = new[edge[1]]
            if dv is None or cand < dv:
                new[edge[1]] = cand
                layer[edge[1]] = edge
                changed = edge[1]
        layers.append(layer)
        if changed is None:
            break
        dist = new
        if r == n_nodes:
            walk = _walk(layers, r, changed)
            raise NegativeCycleOffAnchor(graph.anchor, _cycle_in(walk))
    if dist[target] is None:
        return ShortestPathResult([], None, False, rounds)
    path = _walk(layers, len(layers) - 1, target)
    return ShortestPathResult(path, dist[target], True, rounds)


def _as_transfer(edge, graph):
    u, v, _, payload = edge
    return (graph.center(u), graph.center(v), payload[1])


def extract_loop_start(graph, result, instance, allotment, occ=None):
    if not result.feasible or result.cost >= 0:
        return None
    path = result.path
    closure = CYCLE
    if path[-1][3][0] == PENALTY:
        closure = PENALTY
        path = path[:-1]
    transfers = [_as_transfer(e, graph) for e in path]
    loop = make_loop(instance, allotment, transfers, closure, occ)
    assert loop.cost == result.cost, (loop, result.cost)
    return loop


def _close(instance, allotment, transfers, x, w, occ):
    """Loop from a transfer chain ``w -> ... -> x`` closed by pen(x, w)."""
    if not transfers:
        return None
    if x == w:
        return make_loop(instance, allotment, transfers, CYCLE, occ)
    return make_loop(instance, allotment, transfers, PENALTY, occ)


def extract_loop_through(graph, result, instance, allotment, occ=None):
    """Merge the anchor copies and collapse multiple penalty edges into one.

    With penalty edges ``x -> y`` (first) and ``z -> w`` (last) on the path,
    everything between ``x`` and ``w`` is replaced by the single penalty edge
    ``x -> w``; the loop is then rotated so that the penalty edge closes it.
    """
    if not result.feasible or result.cost >= 0:
        return None
    path = result.path
    pens = [i for i, e in enumerate(path) if e[3][0] == PENALTY]
    if not pens:
        transfers = [_as_transfer(e, graph) for e in path]
        loop = make_loop(instance, allotment, transfers, CYCLE, occ)
    else:
        a, b = pens[0], pens[-1]
        x = graph.center(path[a][0])
        w = graph.center(path[b][1])
        chain = path[b + 1:] + path[:a]
        transfers = [_as_transfer(e, graph) for e in chain]
        loop = _close(instance, allotment, transfers, x, w, occ)
    if loop is None or loop.cost >= 0:
        return None
    return loop


def loop_from_cycle(instance, allotment, cycle, occ=None):
    """Turn a negative cycle of the anchored graph into a negative simple loop.

    Two penalty edges ``x -> y`` and ``z -> w`` on one cycle have the same total
    weight as ``z -> y`` plus ``x -> w``, which splits the cycle in two; one
    half is negative, and we recurse on it.
    """
    occ = allotment.occupancy if occ is None else occ
    edges = [(u, v, payload) for u, v, _, payload in cycle]
    while True:
        pens = [i for i, e in enumerate(edges) if e[2][0] == PENALTY]
        if len(pens) <= 1:
            break
        a, b = pens[0], pens[1]
        x, y = edges[a][0], edges[a][1]
        z, w = edges[b][0], edges[b][1]
        halves = []
        for chain, tail, head in ((edges[a + 1:b], z, y), (edges[b + 1:] + edges[:a], x, w)):
            if tail == head:
                continue
            halves.append(chain + [(tail, head, (PENALTY, None))])
        best = None
        for half in halves:
            c = _cycle_weight(instance, occ, half)
            if best is None or c < best[0]:
                best = (c, half)
        edges = best[1]
    pens = [i for i, e in enumerate(edges) if e[2][0] == PENALTY]
    if not pens:
        transfers = [(u, v, p[1]) for u, v, p in edges]
        return make_loop(instance, allotment, transfers, CYCLE, occ)
    a = pens[0]
    chain = edges[a + 1:] + edges[:a]
    transfers = [(u, v, p[1]) for u, v, p in chain]
    return _close(instance, allotment, transfers, edges[a][0], edges[a][1], occ)


def _cycle_weight(instance, occ, edges):
    total = 0
    for u, v, payload in edges:
        if payload[0] == PENALTY:
            total = total + penalty_delta(instance, occ, u, v)
        else:
            row = instance.cost[payload[1]]
            total += row[v] - row[u]
    return total


def search(instance, allotment, heaps, j, variant=THROUGH, occ=None):
    """Return ``(loop_or_None, bellman_ford_rounds)``."""
    if variant == START:
        if not allotment.members[j]:
            return None, 0
        graph = build_negloop_start(instance, allotment, heaps, j, occ)
        result = bellman_ford(graph)
        return extract_loop_start(graph, result, instance, allotment, occ), result.rounds
    graph = build_negloop_through(instance, allotment, heaps, j, occ)
    result = bellman_ford(graph)
    return extract_loop_through(graph, result, instance, allotment, occ), result.rounds


def most_negative_loop(instance, allotment, heaps, j, variant=THROUGH, occ=None):
    """Cheapest strictly negative loop anchored at ``j``, or None."""
    return search(instance, allotment, heaps, j, variant, occ)[0]


def find_negative_loop(instance, allotment, heaps, occ=None):
    """First negative loop found by scanning anchors 0..k-1 (through variant).

    A state that is not loop-free can make Bellman-Ford hit a negative cycle
    that avoids the current anchor; that cycle is itself turned into a witness.
    Returns ``(anchor, loop)`` or None when the allotment is loop-free.
    """
    for j in range(instance.k):
        try:
            loop = most_negative_loop(instance, allotment, heaps, j, THROUGH, occ)
        except NegativeCycleOffAnchor as exc:
            loop = loop_from_cycle(instance, allotment, exc.cycle, occ)
        if loop is not None:
            return j, loop
    return None
