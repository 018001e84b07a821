"""Exception hierarchy shared across the package."""

from __future__ import annotations


class LclError(Exception):
    """Base class for every error raised by lclkit."""


class MalformedInput(LclError, ValueError):
    """Input data (JSON or Python values) does not follow the expected schema."""


# graph construction
class GraphError(MalformedInput):
    pass


class DuplicateVertex(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class UnknownEndpoint(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DegreeExceeded(GraphError):
    pass


class CycleDetected(GraphError):
    pass


class DuplicateSide(GraphError):
    pass


class InvalidEdgeKind(GraphError):
    pass


class UnknownVertex(LclError, KeyError):
    pass


class NotATree(LclError):
    pass


class InvalidColoring(MalformedInput):
    pass


# solving
class InstanceTooLarge(LclError):
    pass


# automata
class UnknownState(MalformedInput):
    pass


class NotPrunedError(MalformedInput):
    def __init__(self, state: str):
        super().__init__(f"state {state!r} is reachable but has no outgoing transition")
        self.state = state


class CorpusTooLarge(LclError):
    pass


# sigma / pi constructions
class NoSubsequentOne(LclError):
    pass


class WitnessInvalid(LclError):
    pass


class RootNotPositive(LclError):
    pass


class StuckInterior(LclError):
    def __init__(self, vertex: str):
        super().__init__(f"positive vertex {vertex!r} lacks a positive favorite child")
        self.vertex = vertex


class NotColorable(LclError):
    pass


# gadgets
class NotStructured(LclError):
    pass


class NotInImage(LclError):
    def __init__(self, vertex: str | None, reason: str):
        where = f" at {vertex!r}" if vertex is not None else ""
        super().__init__(f"graph is not a gadget encoding{where}: {reason}")
        self.vertex = vertex
        self.reason = reason
