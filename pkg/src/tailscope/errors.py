"""Exception hierarchy for tailscope.

Every error raised for bad input derives from :class:`TailscopeError`, which
is itself a :class:`ValueError`, so callers that only care about "the input
was wrong" can catch one type. The CLI maps these to exit code 2.
"""


class TailscopeError(ValueError):
    """Base class for validation failures."""


class EmptySample(TailscopeError):
    pass


class IndexOutOfRange(TailscopeError):
    pass


class InvalidRange(TailscopeError):
    pass


class InvalidParameter(TailscopeError):
    pass


class InvalidDelta(TailscopeError):
    pass


class TooFewPoints(TailscopeError):
    pass


class DegenerateSeries(TailscopeError):
    pass


class NonpositiveSlope(TailscopeError):
    pass


class OutOfSupport(TailscopeError):
    pass


class NonConvergent(TailscopeError):
    pass


class Unsupported(TailscopeError):
    pass


class NoBracket(TailscopeError):
    pass


class ParseError(TailscopeError):
    """Malformed input file; ``line`` is 1-based."""

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
