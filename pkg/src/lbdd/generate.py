"""Seeded random instance generator (uniform costs or planar Euclidean)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .instance import HARD_CAPACITY, OVERLOAD_ALLOWED, PenaltySpec, make_instance

CAPACITY_POLICIES = ("tight", "exact", "loose", "random", "zero")
PENALTY_POLICIES = ("constant", "linear", "table", "mixed")


@dataclass
class GenConfig:
    k: int
    n: int
    cost_mode: str = "uniform"
    max_cost: int = 100
    width: int = 100
    capacity_policy: str = "tight"
    penalty_policy: str = "mixed"
    seed: int = 0
    hard_capacity: bool = False


def _capacities(rng, k, n, policy):
    if policy == "random":
        return [int(c) for c in rng.integers(0, 4, size=k)]
    if policy == "zero":
        return [0] * k
    tenths = {"tight": 8, "exact": 10, "loose": 12}[policy]
    total = -(-tenths * n // 10)
    base, extra = divmod(total, k)
    return [base + (1 if j < extra else 0) for j in range(k)]


def _penalty(rng, policy, scale):
    if policy == "mixed":
        policy = PENALTY_POLICIES[int(rng.integers(0, 3))]
    hi = max(2, scale // 2)
    if policy == "constant":
        return PenaltySpec.constant(int(rng.integers(1, hi + 1)))
    if policy == "linear":
        return PenaltySpec.linear(int(rng.integers(1, hi + 1)), int(rng.integers(0, max(2, scale // 10) + 1)))
    values = np.sort(rng.integers(1, hi + 1, size=int(rng.integers(1, 6))))
    return PenaltySpec.table(int(v) for v in values)


def generate(cfg: GenConfig):
    if cfg.k < 1 or cfg.n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    rng = np.random.default_rng(cfg.seed)
    if cfg.cost_mode == "uniform":
        cost = rng.integers(1, cfg.max_cost + 1, size=(cfg.n, cfg.k)).tolist()
        scale = cfg.max_cost
    elif cfg.cost_mode == "planar":
        centers = rng.integers(0, cfg.width + 1, size=(cfg.k, 2))
        demands = rng.integers(0, cfg.width + 1, size=(cfg.n, 2))
        cost = [
            [max(1, round(math.hypot(px - cx, py - cy))) for cx, cy in centers.tolist()]
            for px, py in demands.tolist()
        ]
        scale = cfg.width
    else:
        raise ValueError(f"unknown cost mode {cfg.cost_mode!r}")
    caps = _capacities(rng, cfg.k, cfg.n, cfg.capacity_policy)
    mode = HARD_CAPACITY if cfg.hard_capacity else OVERLOAD_ALLOWED
    pens = None if cfg.hard_capacity else [_penalty(rng, cfg.penalty_policy, scale) for _ in range(cfg.k)]
    return make_instance(cost, caps, pens, mode)
