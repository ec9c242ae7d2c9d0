"""Exception types shared across the package."""


class GraphTensorError(Exception):
    """Base class for all errors raised by this library."""


class EmptyVertexSet(GraphTensorError):
    """A graph was constructed with no vertices."""


class DanglingEndpoint(GraphTensorError):
    """An edge endpoint is not a vertex of the graph."""


class LoopForbidden(GraphTensorError):
    """A loop was supplied to a graph that does not allow loops."""


class EmptySelection(GraphTensorError):
    """An operation needing a non-empty selection received an empty one."""


class UnknownVertex(GraphTensorError):
    """A vertex label does not belong to the expected vertex set."""


class UnknownIndex(GraphTensorError):
    """An index label does not belong to the family's index set."""


class EqualVertices(GraphTensorError):
    """An unordered-pair operation was given the same vertex twice."""


class MissingStructure(GraphTensorError):
    """The process needs index structure (order or D) the family lacks."""


class SearchBudgetExceeded(GraphTensorError):
    """An exhaustive search would exceed the configured budget."""


class DomainMismatch(GraphTensorError):
    """A map's carrier does not match the vertex set an operation expects."""


class NotACongruence(GraphTensorError):
    """The supplied pair (classes, ehat) violates the congruence laws."""


class NotAHomomorphism(GraphTensorError):
    """A map required to be edge-preserving is not."""


class NoFactorization(GraphTensorError):
    """No factor map exists where one is mathematically guaranteed."""


class PreconditionViolated(GraphTensorError):
    """The caller violated a stated precondition of a check."""


class FormatError(GraphTensorError):
    """A serialized object does not match its documented schema."""


class ParseError(GraphTensorError):
    """Constraint text could not be parsed; carries the offset of the fault."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownSymbol(ParseError):
    """An identifier outside the constraint grammar's closed vocabulary."""
