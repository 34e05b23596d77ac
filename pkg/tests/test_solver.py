import random

import pytest

from lbdd.allotment import Allotment, apply_loop
from lbdd.errors import InstanceError
from lbdd.instance import HARD_CAPACITY, PenaltySpec, make_instance, objective_cost
from lbdd.oracle import exhaustive_solve
from lbdd.solver import lift_hard_allotment, solve, solve_hard_capacity, verify_optimal

from helpers import four_cycle, i1, random_instance


def test_i1():
    res = solve(i1(), check=True)
    assert res.objective == 16
    assert res.allotment.assign == {0: 0, 1: 0, 2: 1}
    assert res.stats.operations == 3
    assert verify_optimal(i1(), res.allotment).verdict == "OPTIMAL"


def test_custom_order_keeps_original_ids():
    res = solve(i1(), order=[2, 1, 0])
    assert res.objective == 16
    assert objective_cost(i1(), res.allotment) == 16
    assert sorted(res.allotment.assign) == [0, 1, 2]


def test_four_cycle_certificate():
    inst = four_cycle()
    cert = verify_optimal(inst, [0, 1, 2, 3])
    assert not cert.optimal and cert.verdict == "NOT_OPTIMAL"
    assert cert.witness.cost == -13
    assert solve(inst).objective == 27


def test_mode_guards():
    hard = make_instance([[1, 2]], [1, 1], None, HARD_CAPACITY)
    with pytest.raises(InstanceError):
        solve(hard)
    with pytest.raises(InstanceError):
        solve_hard_capacity(i1())


def test_witness_strictly_improves():
    rng = random.Random(8)
    found = 0
    for _ in range(400):
        inst = random_instance(rng, k=(2, 4), n=(2, 9))
        assign = [rng.randrange(inst.k) for _ in range(inst.n)]
        cert = verify_optimal(inst, assign)
        best = exhaustive_solve(inst)[0]
        before = objective_cost(inst, assign)
        # Certificate completeness and soundness against brute force.
        assert cert.optimal == (before == best)
        if not cert.optimal:
            allot = Allotment.from_assignment(inst.k, assign)
            apply_loop(inst, allot, cert.witness)
            assert objective_cost(inst, allot) == before + cert.witness.cost < before
            found += 1
    assert found > 100


def test_hard_capacity_basics():
    inst = make_instance([[4, 9], [3, 8], [5, 1]], [1, 1], None, HARD_CAPACITY)
    res = solve_hard_capacity(inst, check=True)
    assert res.objective == 4 and res.unassigned == [0]
    assert res.allotment.assign == {1: 0, 2: 1}
    reduced, lifted = lift_hard_allotment(inst, res.allotment.assign)
    assert lifted.assign[0] == reduced.virtual_center
    assert verify_optimal(reduced, lifted).optimal


def test_hard_capacity_against_oracle():
    rng = random.Random(9)
    for _ in range(200):
        inst = random_instance(rng, k=(1, 3), n=(0, 6), cap=(0, 3), hard=True)
        res = solve_hard_capacity(inst)
        obj, assign = exhaustive_solve(inst)
        assert res.objective == obj
        assert len(res.unassigned) == sum(j is None for j in assign)
        occ = res.allotment.occupancy
        assert all(o <= c.capacity for o, c in zip(occ, inst.centers))


def test_empty_instance():
    inst = make_instance([], [2], [PenaltySpec.constant(3)])
    res = solve(inst)
    assert res.objective == 0 and res.allotment.assign == {}
    assert verify_optimal(inst, res.allotment).optimal


def test_i1_under_hard_capacity():
    from lbdd.instance import HARD_CAPACITY as HC

    inst = make_instance([[1, 5], [2, 4], [6, 3]], [1, 1], None, HC)
    res = solve_hard_capacity(inst)
    assert len(res.unassigned) == 1 and res.objective == exhaustive_solve(inst)[0] == 4


def test_single_zero_capacity_center():
    inst = make_instance([[3], [4], [5]], [0], None, HARD_CAPACITY)
    res = solve_hard_capacity(inst)
    assert res.objective == 0 and res.unassigned == [0, 1, 2]
