"""Whole-instance solving, the optimality certificate and the hard-capacity variant."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .allotment import Allotment, Loop
from .dynamic import Engine, EngineStats
from .errors import InstanceError
from .instance import HARD_CAPACITY, objective_cost, occupancy_vector, reduce_no_overload
from .multigraph import build_heaps
from .negloop import find_negative_loop


class SolveResult(NamedTuple):
    allotment: Allotment
    objective: int
    stats: EngineStats


class HardCapacityResult(NamedTuple):
    allotment: Allotment
    objective: int
    unassigned: list


@dataclass
class Certificate:
    optimal: bool
    witness: Loop | None = None
    anchor: int | None = None

    @property
    def verdict(self):
        return "OPTIMAL" if self.optimal else "NOT_OPTIMAL"


def solve(instance, *, order=None, check=False):
    """Insert every demand (index order unless ``order`` is given) into a fresh engine."""
    if instance.mode == HARD_CAPACITY:
        raise InstanceError("hard_capacity instances are solved by solve_hard_capacity")
    engine = Engine(instance, check=check)
    order = range(instance.n) if order is None else list(order)
    ids = []
    for d in order:
        ids.append(d)
        engine.insert_demand(instance.cost[d])
    assign = {ids[e]: j for e, j in engine.allotment.assign.items()}
    allotment = Allotment(instance.k, assign)
    return SolveResult(allotment, engine.objective(), engine.stats)


def verify_optimal(instance, allotment):
    """Optimal iff no anchor admits a negative loop; otherwise return a witness."""
    if not isinstance(allotment, Allotment):
        allotment = Allotment.from_assignment(instance.k, allotment)
    occupancy_vector(instance, allotment.assign)
    heaps = build_heaps(instance, allotment)
    found = find_negative_loop(instance, allotment, heaps)
    if found is None:
        return Certificate(True)
    anchor, loop = found
    return Certificate(False, loop, anchor)


def solve_hard_capacity(instance, *, check=False):
    """Solve via the virtual-center reduction and strip the virtual center.

    Demands left on the virtual center are reported as unassigned.
    """
    if instance.mode != HARD_CAPACITY:
        raise InstanceError("solve_hard_capacity expects a hard_capacity instance")
    reduced = reduce_no_overload(instance)
    engine = Engine(reduced, check=check)
    for row in reduced.cost:
        engine.insert_demand(row)
    virtual = reduced.virtual_center
    assign = {d: j for d, j in engine.allotment.assign.items() if j != virtual}
    unassigned = sorted(d for d, j in engine.allotment.assign.items() if j == virtual)
    objective = sum(instance.cost[d][j] for d, j in assign.items())
    return HardCapacityResult(Allotment(instance.k, assign), objective, unassigned)


def lift_hard_allotment(instance, assign):
    """Hard-capacity assignment (None = unassigned) as an allotment of the reduced instance."""
    reduced = reduce_no_overload(instance)
    virtual = reduced.virtual_center
    lifted = {d: (virtual if assign.get(d) is None else assign[d]) for d in range(instance.n)}
    return reduced, Allotment(reduced.k, lifted)


__all__ = [
    "Certificate",
    "HardCapacityResult",
    "SolveResult",
    "lift_hard_allotment",
    "objective_cost",
    "solve",
    "solve_hard_capacity",
    "verify_optimal",
]
