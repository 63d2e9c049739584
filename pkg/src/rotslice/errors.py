"""Exception hierarchy shared by all modules."""


class RotsliceError(Exception):
    """Base class for every error raised by this package."""


class ResourceLimitError(RotsliceError):
    """A configured cap (bits, precision, depth, N) would be exceeded."""


class DegenerateInputError(RotsliceError, ValueError):
    """Input violates a non-degeneracy hypothesis, e.g. a rational log-ratio."""


class PreconditionError(RotsliceError, ValueError):
    """An operation was called outside its documented domain."""


class PrecisionError(RotsliceError):
    """A decision could not be certified at the available precision."""


class ResolutionError(RotsliceError, ValueError):
    """A finite set representation is too coarse for the requested depth."""


class ConfigError(RotsliceError, ValueError):
    """Invalid experiment configuration; carries the offending line/field."""

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
