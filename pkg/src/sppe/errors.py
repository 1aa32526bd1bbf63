"""Exception hierarchy for instance validation and solver failures."""


class SppeError(Exception):
    """Base class for all errors raised by this package."""


class ShapeMismatch(SppeError):
    """Instance arrays disagree with each other or with declared counts."""


class NonPositiveBudget(SppeError):
    def __init__(self, buyer: int):
        super().__init__(f"buyer {buyer} must have a strictly positive budget")
        self.buyer = buyer


class NegativeValuation(SppeError):
    def __init__(self, buyer: int, good: int):
        super().__init__(f"valuation of buyer {buyer} for good {good} is negative")
        self.buyer = buyer
        self.good = good


class DimensionMismatch(SppeError):
    """An equilibrium's shape disagrees with the instance or partition."""


class GoodsLimitExceeded(SppeError):
    """More goods (or good types) than the configured guard allows."""


class NoEquilibriumFound(SppeError):
    """The cell scan finished without a feasible system.

    A well-formed market always carries an equilibrium, so this signals an
    implementation bug rather than a property of the input.
    """


class InstanceTooLarge(SppeError):
    """The brute-force grid oracle only accepts very small instances."""


class InconsistentState(SppeError):
    """A cell state whose sign tables admit no ordering of a buyer's terms."""


class UnknownWitness(SppeError):
    """A witness tuple entry is not a valid candidate for its good."""


class InternalInconsistency(SppeError):
    """A defensive invariant failed; indicates a bug."""
