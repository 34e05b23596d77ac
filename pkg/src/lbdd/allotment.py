"""Mutable allotment state and loop re-adjustment."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidLoop, StaleLoop, UnknownDemand
from .instance import INF

CYCLE = "cycle"
PENALTY = "penalty"


@dataclass
class Allotment:
    """demand -> center mapping with per-center member sets kept in sync."""

    k: int
    assign: dict = field(default_factory=dict)
    members: list = None

    def __post_init__(self):
        if self.members is None:
            self.members = [set() for _ in range(self.k)]
            for d, j in self.assign.items():
                self.members[j].add(d)

    @classmethod
    def from_assignment(cls, k, assignment):
        """Build from a mapping or a sequence indexed by demand id."""
        if not hasattr(assignment, "items"):
            assignment = dict(enumerate(assignment))
        for d, j in assignment.items():
            if not 0 <= j < k:
                raise ValueError(f"demand {d} assigned to unknown center {j}")
        return cls(k, dict(assignment))

    @property
    def occupancy(self):
        return [len(m) for m in self.members]

    def center_of(self, d):
        try:
            return self.assign[d]
        except KeyError:
            raise UnknownDemand(d) from None

    def add(self, d, j):
        if d in self.assign:
            raise ValueError(f"demand {d} is already assigned")
        self.assign[d] = j
        self.members[j].add(d)

    def remove(self, d):
        j = self.center_of(d)
        del self.assign[d]
        self.members[j].discard(d)
        return j

    def move(self, d, j):
        i = self.center_of(d)
        self.members[i].discard(d)
        self.members[j].add(d)
        self.assign[d] = j
        return i

    def copy(self):
        return Allotment(self.k, dict(self.assign), [set(m) for m in self.members])

    def __eq__(self, other):
        if not isinstance(other, Allotment):
            return NotImplemented
        return self.k == other.k and self.assign == other.assign


def occupancy(allotment, center):
    return len(allotment.members[center])


@dataclass(frozen=True)
class Loop:
    """Chain of transfers closed by a transfer (cycle) or by a penalty edge.

    ``transfers`` are ``(from_center, to_center, demand)`` triples. A penalty
    closure runs from the last ``to_center`` back to the first ``from_center``:
    the first center loses one unit of occupancy and the last one gains one.
    """

    transfers: tuple
    closure: str
    cost: int

    def __post_init__(self):
        ts = tuple(tuple(t) for t in self.transfers)
        object.__setattr__(self, "transfers", ts)
        if not ts:
            raise InvalidLoop("a loop needs at least one transfer")
        if self.closure not in (CYCLE, PENALTY):
            raise InvalidLoop(f"unknown closure {self.closure!r}")
        for (_, to, _), (nxt, _, _) in zip(ts, ts[1:]):
            if to != nxt:
                raise InvalidLoop("transfers do not chain")
        sources = [t[0] for t in ts]
        if len(set(sources)) != len(sources):
            raise InvalidLoop("a center is left twice; loop is not simple")
        if len({t[2] for t in ts}) != len(ts):
            raise InvalidLoop("a demand is moved twice")
        if any(t[0] == t[1] for t in ts):
            raise InvalidLoop("transfer onto its own center")
        first, last = ts[0][0], ts[-1][1]
        if self.closure == CYCLE and last != first:
            raise InvalidLoop("cycle does not return to its first center")
        if self.closure == PENALTY and last in sources:
            raise InvalidLoop("penalty-closed chain revisits a center")

    @property
    def centers(self):
        return [t[0] for t in self.transfers]

    @property
    def head(self):
        return self.transfers[0][0]

    @property
    def tail(self):
        return self.transfers[-1][1]


def transfer_cost(instance, d, i, j):
    row = instance.cost[d]
    return row[j] - row[i]


def penalty_delta(instance, occ, x, w):
    """Penalty change when ``x`` gains one unit and ``w`` loses one."""
    gain = instance.centers[x].marginal(occ[x] + 1)
    if gain is INF:
        return INF
    return gain - instance.centers[w].marginal(occ[w])


def make_loop(instance, allotment, transfers, closure, occ=None):
    """Loop whose cost is evaluated against the current allotment."""
    transfers = tuple(tuple(t) for t in transfers)
    cost = sum(transfer_cost(instance, d, i, j) for i, j, d in transfers)
    if closure == PENALTY and transfers:
        occ = allotment.occupancy if occ is None else occ
        cost = cost + penalty_delta(instance, occ, transfers[-1][1], transfers[0][0])
    return Loop(transfers, closure, cost)


def check_fresh(allotment, loop):
    for i, _, d in loop.transfers:
        if allotment.assign.get(d) != i:
            raise StaleLoop(f"demand {d} is no longer on center {i}")


def apply_loop(instance, allotment, loop):
    """Re-assign every demand on ``loop`` to its target center, in place.

    Returns the same allotment for chaining.
    """
    check_fresh(allotment, loop)
    for _, j, d in loop.transfers:
        allotment.move(d, j)
    return allotment
