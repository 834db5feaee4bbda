"""Exception hierarchy shared by every module."""

from __future__ import annotations


class OrientedRegError(Exception):
    """Base class for all errors raised by this package."""


# graph construction


class GraphError(OrientedRegError, ValueError):
    pass


class UndeclaredVertex(GraphError):
    pass


class NonPositiveWeight(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class UnknownEdge(GraphError):
    pass


# ideals


class IdealError(OrientedRegError, ValueError):
    pass


class ZeroIdeal(IdealError):
    pass


class UnitIdeal(IdealError):
    pass


class NotSquarefree(IdealError):
    pass


class NotAPartition(IdealError):
    pass


# oracle


class TooLarge(OrientedRegError):
    """The polarized variable count exceeds the oracle cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} polarized variables exceeds the cap of {cap}")
        self.count = count
        self.cap = cap


# formulas


class PreconditionFailed(OrientedRegError):
    """A theorem's hypotheses do not hold for the given input.

    ``predicate`` is a short machine-readable name for the failed check and
    ``detail`` a human-readable explanation.
    """

    def __init__(self, predicate: str, detail: str = ""):
        super().__init__(f"{predicate}: {detail}" if detail else predicate)
        self.predicate = predicate
        self.detail = detail


class EmptyEdgeSet(PreconditionFailed):
    def __init__(self, detail: str = "graph has no edges"):
        super().__init__("nonemptyEdgeSet", detail)


class NotASinkPath(PreconditionFailed):
    def __init__(self, detail: str):
        super().__init__("sinkPath", detail)


class NoApplicableMethod(OrientedRegError):
    pass


class SearchBudgetExceeded(OrientedRegError):
    pass


class OverlappingComponents(OrientedRegError, ValueError):
    pass


class NonPositiveLength(OrientedRegError, ValueError):
    pass


class LengthTooSmall(OrientedRegError, ValueError):
    pass


# families


class FamilyError(OrientedRegError, ValueError):
    pass


class BadParameters(FamilyError):
    pass


class LengthMismatch(FamilyError):
    pass


class DuplicateChord(FamilyError):
    pass


class BadCrossEdge(FamilyError):
    pass


class TooFewParts(FamilyError):
    pass


class InfeasibleSinkPlacement(FamilyError):
    pass
