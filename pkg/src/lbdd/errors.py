"""Exception hierarchy shared by every lbdd module."""


class LBDDError(Exception):
    """Base class for all errors raised by lbdd."""


class InstanceError(LBDDError, ValueError):
    """A problem instance failed validation.

    ``index`` names the offending demand row or center; ``where`` says which.
    """

    def __init__(self, message, index=None, where=None):
        super().__init__(message)
        self.index = index
        self.where = where


class NonPositiveCost(InstanceError):
    pass


class NonMonotonePenalty(InstanceError):
    pass


class DimensionMismatch(InstanceError):
    pass


class DuplicateId(InstanceError):
    pass


class BadPenalty(InstanceError):
    pass


class BadCostRow(InstanceError):
    pass


class UnassignedDemand(LBDDError):
    def __init__(self, demand):
        super().__init__(f"demand {demand} has no assignment")
        self.demand = demand


class UnknownDemand(LBDDError, KeyError):
    def __init__(self, demand):
        super().__init__(f"unknown demand {demand}")
        self.demand = demand

    def __str__(self):
        return self.args[0]


class StaleLoop(LBDDError):
    pass


class InvalidLoop(LBDDError, ValueError):
    pass


class NegativeCycleOffAnchor(LBDDError):
    """Bellman-Ford kept relaxing after the last permitted round.

    ``cycle`` holds the offending edges as ``(u, v, weight, payload)`` tuples so
    that callers (the certificate checker) can turn it into a witness.
    """

    def __init__(self, anchor, cycle):
        super().__init__(f"negative cycle avoiding anchor {anchor}")
        self.anchor = anchor
        self.cycle = cycle


class NegativeCapacity(LBDDError, ValueError):
    pass


class CapacityViolation(LBDDError, ValueError):
    pass


class InfinitePenaltyImmutable(LBDDError, ValueError):
    pass


class LoopBudgetExceeded(LBDDError, AssertionError):
    pass


class TooLarge(LBDDError):
    pass


class FormatError(LBDDError, ValueError):
    """Parse failure in an instance, event or allotment file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
