"""Exception types raised by hyperstate."""


class HyperstateError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(HyperstateError, ValueError):
    """An argument is outside its documented domain."""


class ValidationError(HyperstateError, ValueError):
    """Input data parsed fine but violates an invariant."""


class UnsupportedSizeError(InvalidArgumentError):
    """The requested problem is too large for the chosen method."""


class ParseError(HyperstateError, ValueError):
    """Malformed serialized input.

    ``position`` is the character offset where parsing failed, or ``None``
    when the failure cannot be pinned to a location.
    """

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
