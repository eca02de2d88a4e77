"""Exception types shared across the simulator."""


class SteersimError(Exception):
    """Base class for all simulator errors."""


class DirectionError(SteersimError, ValueError):
    """A steering direction is outside the valid front hemisphere."""


class DimensionError(SteersimError, ValueError):
    """Vector/matrix dimensions do not agree."""


class ConfigurationError(SteersimError, ValueError):
    """Invalid or inconsistent configuration values."""


class GeometryError(SteersimError, ValueError):
    """Invalid physical placement (e.g. overlapping panels)."""


class MeasurementUnavailableError(SteersimError, KeyError):
    """A file-backed interference oracle has no entry for the requested pair."""


class UnsupportedOperationError(SteersimError, RuntimeError):
    """The operation is not supported by this oracle backend."""


class GridParseError(SteersimError, ValueError):
    """A grid or table file could not be parsed."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number
