"""Exception types raised across the package."""


class KaleidoscopeError(ValueError):
    """Base class for all package errors."""


class DomainError(KaleidoscopeError):
    """An argument lies outside the domain of an operation."""


class ParameterError(KaleidoscopeError):
    """Inconsistent mapping parameters (e.g. branch does not match smear sign)."""


class UnsatisfiableTargetError(DomainError):
    """No prefix of the candidate vectors reaches the requested Katz number."""

    def __init__(self, target, max_katz):
        self.target = target
        self.max_katz = max_katz
        super().__init__(
            f"Katz target {target} unreachable; best achievable is {max_katz:.6g}"
        )


class PolygonError(KaleidoscopeError):
    """A polygon fails validation; ``vertex`` is the offending index (or None)."""

    def __init__(self, message, vertex=None):
        self.vertex = vertex
        if vertex is not None:
            message = f"vertex {vertex}: {message}"
        super().__init__(message)


class FormatError(KaleidoscopeError):
    """Malformed file contents; ``offset`` is the byte offset of the problem."""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
