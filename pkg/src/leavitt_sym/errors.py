from typing import Iterable, List


class LeavittSymError(Exception):
    """Base class for every error raised by leavitt-sym."""


class GraphParseError(LeavittSymError, ValueError):
    """A graph description could not be turned into a DirectedMultigraph."""


class GraphSyntaxError(GraphParseError):
    pass


class DanglingEndpointError(GraphParseError):
    def __init__(self, edge: str, vertex: str) -> None:
        super().__init__(f"edge '{edge}' references undeclared vertex '{vertex}'")
        self.edge = edge
        self.vertex = vertex


class DuplicateIdentifierError(GraphParseError):
    def __init__(self, identifier: str, kind: str = "identifier") -> None:
        super().__init__(f"duplicate {kind} '{identifier}'")
        self.identifier = identifier


class UnknownFamilyError(LeavittSymError, ValueError):
    pass


class FamilySizeError(LeavittSymError, ValueError):
    pass


class UnknownGeneratorError(LeavittSymError, ValueError):
    """An edge or vertex that is not part of the graph was referenced."""


class GraphMismatchError(LeavittSymError, ValueError):
    """Two operands live over different graphs."""


class RangeMismatchError(LeavittSymError, ValueError):
    pass


class NotInV2PlusError(LeavittSymError, ValueError):
    """The functional tau is only defined on span{p_u, S_e S_f*}."""


class IsolatedVerticesError(LeavittSymError, ValueError):
    def __init__(self, vertices: Iterable[str]) -> None:
        self.vertices: List[str] = list(vertices)
        super().__init__(f"graph has isolated vertices: {', '.join(self.vertices)}")


class CyclicGraphError(LeavittSymError, ValueError):
    pass


class PermutationError(LeavittSymError, ValueError):
    pass


class ExpressionSyntaxError(LeavittSymError, ValueError):
    def __init__(self, message: str, position: int = -1) -> None:
        if position >= 0:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class RelationCheckError(LeavittSymError):
    """A constructed representation violates a defining relation. Always a bug."""


class BudgetExceededError(LeavittSymError):
    def __init__(self, guard: str, requested: int, allowed: int) -> None:
        super().__init__(f"{guard} exceeded: requested {requested}, allowed {allowed}")
        self.guard = guard
        self.requested = requested
        self.allowed = allowed


class NotSimpleDigraphError(LeavittSymError, ValueError):
    """A loop or a repeated edge where a simple digraph is required."""
