"""Exception types shared across the engine."""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all errors raised by this package."""


class MalformedArc(EngineError):
    """Arc data violates a structural invariant (lift ranges, widths, shape)."""


class MalformedInput(EngineError):
    """Serialized payload does not match the expected schema."""


class IncompatibleInput(EngineError):
    """A set of arcs contains a crossing pair or cannot be extended."""


class UnknownArcId(EngineError):
    """Arc id not present in the triangulation."""


class TooLarge(EngineError):
    """Requested enumeration exceeds the built-in size guard."""


class NotFinite(EngineError):
    """Operation requires a triangulation without spiralling arcs."""


class NotBridging(EngineError):
    """Operation requires every arc to run between the two boundaries."""


class NotStrictlyAsymptotic(EngineError):
    """Operation requires a spiralling arc."""


class NoOtherStrictAsymptoticArc(EngineError):
    """Frame switching needs a second spiralling arc on the same boundary."""


class NotMutable(EngineError):
    """Vertex is frozen, framing, or sits on a loop/2-cycle."""


class LoopAtVertex(EngineError):
    """Vertex carries a loop."""


class NoAdmissibleOrdering(EngineError):
    """Quiver admits no source-admissible ordering."""


class NotACycleQuiver(EngineError):
    """Quiver is not a single cycle compatible with the given cyclic order."""


class ShapeNotSubquiver(EngineError):
    """Proposed shape is not a subquiver of the quiver being contracted."""


class UnknownArrow(EngineError):
    """Arrow name not present in the quiver."""


class UnknownVertex(EngineError):
    """Vertex id not present in the quiver."""


class NonCommutingPair(EngineError):
    """The two lifts of a composite mutation are adjacent, so the order matters."""


class ExplorationBudgetExceeded(EngineError):
    """Seed exploration hit the configured budget before closing."""
