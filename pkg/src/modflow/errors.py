"""Exception types shared across the package."""


class ModflowError(Exception):
    """Base class for all errors raised by this package."""


class GraphInputError(ModflowError, ValueError):
    """Invalid graph construction input."""


class SelfLoopError(GraphInputError):
    pass


class DuplicateEdgeError(GraphInputError):
    pass


class VertexRangeError(GraphInputError):
    pass


class GraphFormatError(ModflowError, ValueError):
    """Malformed graph file. Carries the offending line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PreconditionError(ModflowError, ValueError):
    """An operation was called outside its documented preconditions."""
