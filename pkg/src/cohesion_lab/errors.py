"""Exception types shared across the package."""


class CohesionError(Exception):
    """Base class for all package-specific errors."""


class EdgeListParseError(CohesionError, ValueError):
    """Malformed edge-list input; carries the offending 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class ValidationError(CohesionError, ValueError):
    """Input violates a structural invariant (self-loop, negative weight, ...)."""


class DomainError(CohesionError, ValueError):
    """Operation called outside its domain (disconnected graph, n too small, ...)."""


class ResourceBudgetError(CohesionError, RuntimeError):
    """A bounded search or retry budget was exhausted."""


class ConvergenceError(CohesionError, RuntimeError):
    """An iterative solver failed to converge; carries the last iterate."""

    def __init__(self, message: str, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate
