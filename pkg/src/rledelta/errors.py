"""Exception types shared across the package."""


class RleDeltaError(Exception):
    """Base class for all errors raised by this package."""


class RleFormatError(RleDeltaError):
    """Malformed or invalid run-length input."""


class MalformedLine(RleFormatError):
    def __init__(self, lineno, line, reason="bad syntax"):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: {reason}: {line!r}")


class NonPositiveExponent(RleFormatError):
    pass


class AdjacentEqualRuns(RleFormatError):
    pass


class ExponentOverflow(RleFormatError):
    pass


class ParamOutOfRange(RleDeltaError):
    pass


class InputTooLarge(RleDeltaError):
    pass


class InternalInvariantViolation(RleDeltaError):
    """An internal consistency check failed; indicates a bug, not bad input."""
