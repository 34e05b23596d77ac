"""Optimal load-balanced demand distribution by negative-loop removal."""

from .allotment import Allotment, Loop, apply_loop, make_loop, occupancy
from .dynamic import Engine
from .errors import LBDDError
from .instance import (
    HARD_CAPACITY,
    INF,
    OVERLOAD_ALLOWED,
    PenaltySpec,
    ProblemInstance,
    ServiceCenter,
    make_instance,
    marginal_penalty,
    objective_cost,
    reduce_no_overload,
    validate_instance,
)
from .oracle import exhaustive_solve, mincost_flow_solve
from .solver import solve, solve_hard_capacity, verify_optimal

__version__ = "0.1.0"
