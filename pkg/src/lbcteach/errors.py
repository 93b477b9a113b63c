"""Exception types raised across the toolkit."""


class TeachingError(Exception):
    """Base class for every error raised by lbcteach."""


class InstanceFormatError(TeachingError, ValueError):
    """A teaching instance (in memory or on disk) is malformed."""


class NotRealizable(TeachingError):
    """No weight vector strictly induces the target policy."""


class ZeroDifference(NotRealizable):
    """A target action has exactly the same features as an alternative."""

    def __init__(self, state, action):
        super().__init__(f"zero feature difference at state {state!r} vs action {action!r}")
        self.state = state
        self.action = action


class NumericalFailure(TeachingError):
    """The LP backend could not certify any status."""


class SpuriousStatus(TeachingError):
    """An extreme-ray LP returned a status that cannot occur for valid input."""


class ZeroVector(TeachingError, ValueError):
    """A zero vector was given where a ray direction is required."""


class Uncoverable(TeachingError):
    """The union of the subsets misses part of the universe."""

    def __init__(self, missing):
        self.missing = sorted(missing)
        super().__init__(f"elements not covered by any subset: {self.missing}")


class UncoverableUniverse(Uncoverable):
    """Raised by the set-cover reduction for a set system with gaps."""


class BudgetExceeded(TeachingError):
    """Branch-and-bound hit its node limit; ``incumbent`` is the best cover found."""

    def __init__(self, incumbent, nodes):
        super().__init__(f"node budget exhausted after {nodes} nodes "
                         f"(incumbent size {len(incumbent.chosen)})")
        self.incumbent = incumbent
        self.nodes = nodes


class NoneFound(TeachingError):
    """Brute-force search found no valid teaching set within the size limit."""


class ResampleLimit(TeachingError):
    """Random instance generation could not reach the required score margin."""
