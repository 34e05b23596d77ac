"""Seeded small-instance generators shared by the test modules."""

from __future__ import annotations

import random

from lbdd.instance import HARD_CAPACITY, OVERLOAD_ALLOWED, PenaltySpec, make_instance


def random_penalty(rng: random.Random, hi=30):
    kind = rng.choice(("constant", "linear", "table"))
    if kind == "constant":
        return PenaltySpec.constant(rng.randint(1, hi))
    if kind == "linear":
        return PenaltySpec.linear(rng.randint(1, hi), rng.randint(0, 5))
    return PenaltySpec.table(sorted(rng.randint(1, hi) for _ in range(rng.randint(1, 4))))


def random_instance(rng, k=(2, 3), n=(1, 8), max_cost=100, cap=(0, 3), pen_hi=30, hard=False):
    k = rng.randint(*k) if isinstance(k, tuple) else k
    n = rng.randint(*n) if isinstance(n, tuple) else n
    cost = [[rng.randint(1, max_cost) for _ in range(k)] for _ in range(n)]
    caps = [rng.randint(*cap) for _ in range(k)]
    if hard:
        return make_instance(cost, caps, None, HARD_CAPACITY)
    pens = [random_penalty(rng, pen_hi) for _ in range(k)]
    return make_instance(cost, caps, pens, OVERLOAD_ALLOWED)


def i1():
    """Three demands, two unit-capacity centers, constant penalty 10."""
    return make_instance(
        [[1, 5], [2, 4], [6, 3]], [1, 1], [PenaltySpec.constant(10)] * 2
    )


def four_cycle():
    """Four full centers whose 4-cycle of moves saves 13 and nothing shorter helps."""
    big = 50
    cost = [
        [10, 6, big, big],
        [big, 10, 7, big],
        [big, big, 10, 7],
        [7, big, big, 10],
    ]
    return make_instance(cost, [1, 1, 1, 1], [PenaltySpec.constant(100)] * 4)


def random_event(rng, engine, max_live=8, max_cost=100):
    """Pick a legal event for ``engine`` and apply it; returns a description."""
    live = engine.live
    centers = engine.instance.centers
    ops = ["shift"]
    if len(live) < max_live:
        ops += ["insert"] * 3
    if live:
        ops += ["remove"] * 2
    ops += ["cap"] * 2
    op = rng.choice(ops)
    if op == "insert":
        row = [rng.randint(1, max_cost) for _ in range(engine.k)]
        return ("insert", engine.insert_demand(row), row)
    if op == "remove":
        d = rng.choice(live)
        engine.remove_demand(d)
        return ("remove", d)
    j = rng.randrange(engine.k)
    if op == "cap":
        delta = 1 if centers[j].capacity == 0 or rng.random() < 0.5 else -1
        engine.change_capacity(j, delta)
        return ("cap", j, delta)
    side = rng.choice(("left", "right"))
    engine.shift_penalty(j, side)
    return ("shift", j, side)
