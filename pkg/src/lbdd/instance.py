"""Problem instances: centers, penalty functions, cost matrix and the objective.

Penalties are stored as *marginal* functions: ``q(m)`` is the extra cost of the
m-th unit placed beyond capacity. The total penalty of a center is the sum of
its marginals up to the current occupancy.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping

from .errors import (
    BadPenalty,
    DimensionMismatch,
    DuplicateId,
    InstanceError,
    NonMonotonePenalty,
    NonPositiveCost,
    UnassignedDemand,
)

OVERLOAD_ALLOWED = "overload_allowed"
HARD_CAPACITY = "hard_capacity"
MODES = (OVERLOAD_ALLOWED, HARD_CAPACITY)


class _Infinity:
    """Saturating infinite cost. Adding anything to it leaves it infinite."""

    _singleton = None

    def __new__(cls):
        if cls._singleton is None:
            cls._singleton = super().__new__(cls)
        return cls._singleton

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("INF - INF is undefined")
        return self

    def __rsub__(self, other):
        raise ArithmeticError("finite value minus INF is undefined")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinity()


@dataclass(frozen=True)
class PenaltySpec:
    """Marginal overload penalty ``q(m)`` for m = 1, 2, ...

    ``kind`` is one of constant, linear, table, infinite or zero. The last two
    are markers: infinite forbids overload, zero is only used for the virtual
    center built by :func:`reduce_no_overload`.
    """

    kind: str
    values: tuple = ()

    @classmethod
    def constant(cls, value):
        return cls("constant", (int(value),))

    @classmethod
    def linear(cls, base, step):
        return cls("linear", (int(base), int(step)))

    @classmethod
    def table(cls, values):
        return cls("table", tuple(int(v) for v in values))

    @property
    def is_sentinel(self):
        return self.kind in ("infinite", "zero")

    def value(self, m):
        if m < 1:
            return 0
        kind = self.kind
        if kind == "constant":
            return self.values[0]
        if kind == "linear":
            return self.values[0] + (m - 1) * self.values[1]
        if kind == "table":
            vals = self.values
            return vals[m - 1] if m <= len(vals) else vals[-1]
        if kind == "infinite":
            return INF
        return 0

    def shifted_left(self, units):
        """Equivalent finite spec for ``q(m + units)``."""
        if units <= 0 or self.kind in ("constant", "infinite", "zero"):
            return self
        if self.kind == "linear":
            base, step = self.values
            return PenaltySpec.linear(base + units * step, step)
        vals = self.values[units:] or self.values[-1:]
        return PenaltySpec.table(vals)

    def describe(self):
        if self.kind in ("infinite", "zero"):
            return self.kind
        return " ".join([self.kind, *map(str, self.values)])


INFINITE_PENALTY = PenaltySpec("infinite")
ZERO_PENALTY = PenaltySpec("zero")


@dataclass(frozen=True)
class ServiceCenter:
    id: int
    capacity: int
    penalty: PenaltySpec
    # Horizontal shift of the penalty function: +1 moves it right by one unit.
    shift: int = 0

    def marginal(self, t):
        """Extra cost of holding the t-th demand unit."""
        over = t - self.capacity - self.shift
        if t <= self.capacity or over < 1:
            return 0
        return self.penalty.value(over)

    def total_penalty(self, occupancy):
        total = 0
        for t in range(self.capacity + 1, occupancy + 1):
            total = total + self.marginal(t)
            if total is INF:
                break
        return total

    def normalized(self):
        """Same marginals with ``shift == 0`` (for serialization)."""
        if self.shift == 0:
            return self
        if self.shift > 0:
            return replace(self, capacity=self.capacity + self.shift, shift=0)
        return replace(self, penalty=self.penalty.shifted_left(-self.shift), shift=0)


@dataclass
class ProblemInstance:
    """Validated LBDD instance. Treat as read-only once built."""

    centers: list
    cost: list
    mode: str = OVERLOAD_ALLOWED
    virtual_center: int | None = None

    @property
    def k(self):
        return len(self.centers)

    @property
    def n(self):
        return len(self.cost)

    def capacities(self):
        return [c.capacity for c in self.centers]

    def copy(self):
        return ProblemInstance(list(self.centers), list(self.cost), self.mode, self.virtual_center)

    def __eq__(self, other):
        if not isinstance(other, ProblemInstance):
            return NotImplemented
        return (
            self.centers == other.centers
            and [tuple(r) for r in self.cost] == [tuple(r) for r in other.cost]
            and self.mode == other.mode
            and self.virtual_center == other.virtual_center
        )


def _check_penalty(spec, j):
    if not isinstance(spec, PenaltySpec):
        raise BadPenalty(f"center {j}: penalty must be a PenaltySpec", j, "center")
    if spec.kind == "constant":
        if len(spec.values) != 1 or spec.values[0] < 1:
            raise BadPenalty(f"center {j}: constant penalty must be a positive integer", j, "center")
    elif spec.kind == "linear":
        if len(spec.values) != 2:
            raise BadPenalty(f"center {j}: linear penalty needs base and step", j, "center")
        base, step = spec.values
        if base < 1:
            raise BadPenalty(f"center {j}: linear base must be positive", j, "center")
        if step < 0:
            raise NonMonotonePenalty(f"center {j}: linear step {step} is negative", j, "center")
    elif spec.kind == "table":
        if not spec.values:
            raise BadPenalty(f"center {j}: empty penalty table", j, "center")
        if any(v < 1 for v in spec.values):
            raise BadPenalty(f"center {j}: table penalties must be positive", j, "center")
        for pos in range(1, len(spec.values)):
            if spec.values[pos] < spec.values[pos - 1]:
                raise NonMonotonePenalty(
                    f"center {j}: penalty table decreases at position {pos}", j, "center"
                )
    elif spec.kind not in ("infinite", "zero"):
        raise BadPenalty(f"center {j}: unknown penalty kind {spec.kind!r}", j, "center")


def validate_instance(raw: Mapping, *, allow_sentinels=False) -> ProblemInstance:
    """Build a :class:`ProblemInstance` from raw fields.

    ``raw`` holds ``capacities``, ``penalties`` and ``cost`` (n rows of k
    integers); ``mode`` and ``ids`` (center ids, must be 0..k-1) are optional.
    In hard-capacity mode every penalty is replaced by the infinite marker.
    """
    mode = raw.get("mode", OVERLOAD_ALLOWED)
    if mode not in MODES:
        raise InstanceError(f"unknown mode {mode!r}")
    capacities = list(raw["capacities"])
    penalties = list(raw.get("penalties") or [])
    k = len(capacities)
    if k < 1:
        raise DimensionMismatch("instance needs at least one service center")
    if mode == HARD_CAPACITY and not penalties:
        penalties = [INFINITE_PENALTY] * k
    if len(penalties) != k:
        raise DimensionMismatch(f"{len(penalties)} penalties for {k} centers")
    ids = list(raw.get("ids", range(k)))
    seen = set()
    for pos, cid in enumerate(ids):
        if cid in seen:
            raise DuplicateId(f"center id {cid} appears twice", pos, "center")
        seen.add(cid)
    if len(ids) != k or sorted(ids) != list(range(k)):
        raise DimensionMismatch("center ids must be exactly 0..k-1")

    centers = [None] * k
    for pos, (cid, cap, pen) in enumerate(zip(ids, capacities, penalties)):
        if int(cap) != cap or cap < 0:
            raise InstanceError(f"center {cid}: capacity must be a nonnegative integer", cid, "center")
        if mode == HARD_CAPACITY:
            pen = INFINITE_PENALTY
        _check_penalty(pen, cid)
        if pen.is_sentinel and not allow_sentinels and mode != HARD_CAPACITY:
            raise BadPenalty(
                f"center {cid}: {pen.kind} penalty requires hard_capacity mode", cid, "center"
            )
        centers[cid] = ServiceCenter(cid, int(cap), pen)

    cost = []
    for d, row in enumerate(raw["cost"]):
        row = tuple(row)
        if len(row) != k:
            raise DimensionMismatch(f"demand {d}: {len(row)} costs for {k} centers", d, "demand")
        for v in row:
            if int(v) != v:
                raise InstanceError(f"demand {d}: cost {v!r} is not an integer", d, "demand")
            if v < 1:
                raise NonPositiveCost(f"demand {d}: cost {v} is not positive", d, "demand")
        cost.append(tuple(int(v) for v in row))
    return ProblemInstance(centers, cost, mode, raw.get("virtual_center"))


def make_instance(cost, capacities, penalties=None, mode=OVERLOAD_ALLOWED):
    """Shorthand builder used throughout the tests and scripts."""
    return validate_instance(
        {"cost": cost, "capacities": capacities, "penalties": penalties, "mode": mode}
    )


def marginal_penalty(instance, j, t):
    return instance.centers[j].marginal(t)


def _as_mapping(assign):
    assign = getattr(assign, "assign", assign)
    return assign if hasattr(assign, "items") else dict(enumerate(assign))


def occupancy_vector(instance, assign, demands=None):
    assign = _as_mapping(assign)
    occ = [0] * instance.k
    for d in range(instance.n) if demands is None else demands:
        if d not in assign:
            raise UnassignedDemand(d)
        occ[assign[d]] += 1
    return occ


def objective_cost(instance, allotment, demands=None):
    """Assignment cost plus cumulative overload penalty.

    ``allotment`` may be an :class:`~lbdd.allotment.Allotment`, a demand ->
    center mapping or a sequence indexed by demand. ``demands`` defaults to
    ``range(instance.n)``.
    """
    assign = _as_mapping(allotment)
    demands = range(instance.n) if demands is None else demands
    total = 0
    for d in demands:
        if d not in assign:
            raise UnassignedDemand(d)
        total += instance.cost[d][assign[d]]
    occ = occupancy_vector(instance, assign, demands)
    for center, o in zip(instance.centers, occ):
        total = total + center.total_penalty(o)
    return total


def reduce_no_overload(instance) -> ProblemInstance:
    """Hard-capacity instance -> overload instance with one extra virtual center.

    Real centers get an infinite penalty; the virtual center costs ``max + 1``
    for every demand and is large enough to hold everything.
    """
    if instance.mode != HARD_CAPACITY:
        raise InstanceError("reduce_no_overload expects a hard_capacity instance")
    top = max((max(row) for row in instance.cost), default=0) + 1
    k = instance.k
    centers = [replace(c, penalty=INFINITE_PENALTY) for c in instance.centers]
    centers.append(ServiceCenter(k, instance.n, ZERO_PENALTY))
    cost = [tuple(row) + (top,) for row in instance.cost]
    return ProblemInstance(centers, cost, OVERLOAD_ALLOWED, virtual_center=k)


__all__ = [
    "HARD_CAPACITY",
    "INF",
    "INFINITE_PENALTY",
    "OVERLOAD_ALLOWED",
    "PenaltySpec",
    "ProblemInstance",
    "ServiceCenter",
    "ZERO_PENALTY",
    "make_instance",
    "marginal_penalty",
    "objective_cost",
    "occupancy_vector",
    "reduce_no_overload",
    "validate_instance",
]
