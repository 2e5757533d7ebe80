"""Named exceptions with the CLI exit-code mapping they drive."""


class UsageError(ValueError):
    """Bad configuration or malformed input (exit code 2)."""


class ResourceBoundError(RuntimeError):
    """A configured resource bound was exceeded (exit code 3)."""


class ReachError(RuntimeError):
    """An evaluation needed an edge beyond the transport reach of the table."""


class DimensionMismatchError(RuntimeError):
    """The solved cocycle space has the wrong dimension for its depth."""


class StabilityError(RuntimeError):
    """Re-solving at depth D+1 changed the answer: depth too small."""
