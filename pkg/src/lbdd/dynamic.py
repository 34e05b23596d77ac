"""Keep an allotment loop-free (hence optimal) while the instance changes."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .allotment import Allotment, apply_loop
from .errors import (
    BadCostRow,
    CapacityViolation,
    InfinitePenaltyImmutable,
    LoopBudgetExceeded,
    NegativeCapacity,
)
from .instance import INF, ProblemInstance, objective_cost
from .multigraph import TransferHeapSet, update_after_move
from .negloop import START, THROUGH, find_negative_loop, search

INSERT_BUDGET = 2
OTHER_BUDGET = 1


@dataclass
class EngineStats:
    operations: int = 0
    loops_removed: int = 0
    searches: int = 0
    relaxation_rounds: int = 0
    max_insert_removals: int = 0
    max_other_removals: int = 0


class Engine:
    """Mutable engine state: working instance, allotment and transfer heaps.

    Demand ids are assigned sequentially by :meth:`insert_demand` and never
    reused. With ``check=True`` every public operation ends with a full
    certificate scan and raises :class:`LoopBudgetExceeded` if a negative loop
    survived the prescribed removals.
    """

    def __init__(self, instance, *, check=False):
        self.instance = ProblemInstance(
            list(instance.centers), [], instance.mode, instance.virtual_center
        )
        self.allotment = Allotment(instance.k)
        self.heaps = TransferHeapSet(instance.k)
        self.stats = EngineStats()
        self.check = check
        self._deferred = None

    @property
    def k(self):
        return self.instance.k

    @property
    def live(self):
        return sorted(self.allotment.assign)

    def occupancy(self):
        occ = self.allotment.occupancy
        if self._deferred is not None:
            occ[self._deferred] -= 1
        return occ

    def objective(self):
        return objective_cost(self.instance, self.allotment, self.live)

    def snapshot(self):
        """Current configuration as a standalone instance (demands renumbered).

        Returns ``(instance, allotment, ids)`` where ``ids[new] = old``.
        """
        ids = self.live
        inst = ProblemInstance(
            list(self.instance.centers),
            [self.instance.cost[d] for d in ids],
            self.instance.mode,
            self.instance.virtual_center,
        )
        allot = Allotment.from_assignment(self.k, [self.allotment.assign[d] for d in ids])
        return inst, allot, ids

    # -- internals -------------------------------------------------------

    def _remove_one(self, j, variant):
        occ = self.occupancy()
        loop, rounds = search(self.instance, self.allotment, self.heaps, j, variant, occ)
        self.stats.searches += 1
        self.stats.relaxation_rounds += rounds
        if loop is None:
            return 0
        apply_loop(self.instance, self.allotment, loop)
        for i, dst, d in loop.transfers:
            update_after_move(self.heaps, self.instance, d, i, dst)
        self.stats.loops_removed += 1
        return 1

    def _finish(self, removed, budget, what):
        stats = self.stats
        stats.operations += 1
        if budget == INSERT_BUDGET:
            stats.max_insert_removals = max(stats.max_insert_removals, removed)
        else:
            stats.max_other_removals = max(stats.max_other_removals, removed)
        if removed > budget:
            raise LoopBudgetExceeded(f"{what} removed {removed} loops (budget {budget})")
        if self.check:
            found = find_negative_loop(self.instance, self.allotment, self.heaps)
            if found is not None:
                j, loop = found
                raise LoopBudgetExceeded(
                    f"{what} left a negative loop at center {j} (cost {loop.cost})"
                )

    # -- public operations -----------------------------------------------

    def insert_demand(self, cost_row):
        """Add a demand with the given cost row; returns its id."""
        row = tuple(cost_row)
        if len(row) != self.k:
            raise BadCostRow(f"cost row has {len(row)} entries, expected {self.k}")
        for v in row:
            if isinstance(v, bool) or int(v) != v or v < 1:
                raise BadCostRow(f"cost {v!r} is not a positive integer")
        row = tuple(int(v) for v in row)
        inst = self.instance
        occ = self.allotment.occupancy
        entry = None
        for j in range(self.k):
            if inst.centers[j].marginal(occ[j] + 1) is INF:
                continue
            if entry is None or row[j] < row[entry]:
                entry = j
        if entry is None:
            raise CapacityViolation("no center can accept another demand")

        d = len(inst.cost)
        inst.cost.append(row)
        self.allotment.add(d, entry)
        self.heaps.push_demand(row, d, entry)
        # Step 1: the new demand's outgoing transfers exist, occupancy not yet counted.
        self._deferred = entry
        try:
            removed = self._remove_one(entry, THROUGH)
        finally:
            self._deferred = None
        # Step 2: count the extra occupancy; penalty edges into the entry drop.
        removed += self._remove_one(entry, START)
        self._finish(removed, INSERT_BUDGET, "insert")
        return d

    def remove_demand(self, d):
        j = self.allotment.remove(d)
        self.heaps.discard(d)
        removed = self._remove_one(j, THROUGH)
        self._finish(removed, OTHER_BUDGET, "remove")

    def _check_center(self, j):
        if not 0 <= j < self.k:
            raise ValueError(f"unknown center {j}")

    def change_capacity(self, j, delta):
        self._check_center(j)
        if delta not in (1, -1):
            raise ValueError("capacity changes are restricted to +1 or -1")
        center = self.instance.centers[j]
        new_cap = center.capacity + delta
        if new_cap < 0:
            raise NegativeCapacity(f"center {j}: capacity would become {new_cap}")
        updated = replace(center, capacity=new_cap)
        if updated.marginal(len(self.allotment.members[j])) is INF:
            raise CapacityViolation(f"center {j} is full and cannot be overloaded")
        self.instance.centers[j] = updated
        removed = self._remove_one(j, THROUGH if delta > 0 else START)
        self._finish(removed, OTHER_BUDGET, "capacity change")

    def shift_penalty(self, j, direction):
        self._check_center(j)
        if direction not in ("left", "right"):
            raise ValueError("direction must be 'left' or 'right'")
        center = self.instance.centers[j]
        if center.penalty.is_sentinel:
            raise InfinitePenaltyImmutable(f"center {j}: {center.penalty.kind} penalty has no shape")
        step = 1 if direction == "right" else -1
        self.instance.centers[j] = replace(center, shift=center.shift + step)
        removed = self._remove_one(j, THROUGH if step > 0 else START)
        self._finish(removed, OTHER_BUDGET, "penalty shift")


def insert_demand(state, cost_row):
    return state.insert_demand(cost_row)


def remove_demand(state, demand):
    state.remove_demand(demand)


def change_capacity(state, center, delta):
    state.change_capacity(center, delta)


def shift_penalty(state, center, direction):
    state.shift_penalty(center, direction)
