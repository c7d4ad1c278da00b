"""Exception types shared across the package."""


class NagplanError(Exception):
    """Base class for all errors raised by nagplan."""


class InvalidQueryError(NagplanError):
    """A query referenced a coordinate, vertex, or parameter that is not usable."""


class ParseError(NagplanError):
    """Malformed input file. Carries a byte offset when one is known."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class ConfigError(NagplanError):
    """Invalid or incomplete planner configuration."""


class UnreachableError(NagplanError):
    """The goal cannot be reached within the given constraints."""


class InternalConsistencyError(NagplanError):
    """A graph invariant was violated (broken came_from chain, missing edge)."""


class DegenerateCrossingError(NagplanError):
    """A path touched a ray anchor cell, making the crossing sign undefined."""


class OracleTimeoutError(NagplanError):
    """A brute-force oracle exceeded its enumeration budget."""


class RenderError(NagplanError):
    """The requested render is not supported for this environment."""
