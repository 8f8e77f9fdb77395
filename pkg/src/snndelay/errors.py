"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A scalar/config parameter is outside its valid domain."""


class ShapeError(ValueError):
    """Array shapes do not compose (fan-in/fan-out mismatch etc.)."""


class DataFormatError(ValueError):
    """An event file or checkpoint is malformed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class TrainingDiverged(RuntimeError):
    """Loss became NaN/inf; carries the last diagnostic record."""

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record
