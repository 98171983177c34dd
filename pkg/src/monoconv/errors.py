"""Shared exception types."""


class MonoconvError(Exception):
    """Base class for all package errors."""


class ParseError(MonoconvError, ValueError):
    """Malformed graph or sample input text."""


class ValidationError(MonoconvError, ValueError):
    """Graph violates the simple/undirected/connected contract.

    `kind` is one of "loop", "duplicate edge", "disconnected"; `item` names
    the offending edge or component.
    """

    def __init__(self, kind, item=None):
        self.kind = kind
        self.item = item
        detail = f"{kind}" if item is None else f"{kind}: {item}"
        super().__init__(detail)


class GenerationFailed(MonoconvError, RuntimeError):
    """Random instance generator exhausted its retry budget."""


class EmptyTerminal(MonoconvError, ValueError):
    """Path search called with an empty source or target set."""


class EmptyInput(MonoconvError, ValueError):
    """Shadow operations require nonempty sets on both sides."""


class NotFixpoint(MonoconvError, ValueError):
    """Pair passed to make_closed_pair is not shadow-closed."""


class BadInput(MonoconvError, ValueError):
    """Imprint computation requires disjoint nonempty convex sets."""


class UnsatInstance(MonoconvError, ValueError):
    """Operation requires a satisfiable 2-SAT instance."""


class ForcedVariable(MonoconvError, ValueError):
    """Equivalence grouping was handed a variable that is not free."""


class InvalidPair(MonoconvError, ValueError):
    """Formula construction requires a disjoint, osculating, shadow-closed pair."""


class CyclicStar(MonoconvError, RuntimeError):
    """Internal invariant failure: the combined cell arc graph has a cycle."""


class StructureError(MonoconvError, RuntimeError):
    """Internal invariant failure in the cell decomposition case analysis."""


class EmptySample(MonoconvError, ValueError):
    """Learner requires at least one labeled vertex."""


class NotRealizable(MonoconvError, ValueError):
    """Sample admits no consistent halfspace."""


class SeparationFailed(MonoconvError, RuntimeError):
    """Reconstruction could not separate imprint sets; input is not a genuine
    compressor image."""


class InconsistentOracle(MonoconvError, RuntimeError):
    """Active-learning oracle answers contradict every halfspace."""


class EmptyVersionSpace(MonoconvError, RuntimeError):
    """Online stream eliminated every hypothesis; stream is not realizable."""


class NotAHalfspace(MonoconvError, ValueError):
    """Teaching requires a member of the halfspace family."""


class BudgetExceeded(MonoconvError, ValueError):
    """Brute-force oracle input exceeds its configured budget."""
