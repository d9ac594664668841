"""Shared exception types."""


class GraphParseError(ValueError):
    """Raised for malformed graph text; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CeilingExceeded(RuntimeError):
    """An exact solver refused an instance above its configured size ceiling."""

    def __init__(self, what: str, size: int, ceiling: int):
        self.what = what
        self.size = size
        self.ceiling = ceiling
        super().__init__(f"{what}: size {size} exceeds ceiling {ceiling}")


class AdjacencyBudgetExceeded(ValueError):
    """A property produced a protection set larger than its declared budget."""


class InputShapeError(ValueError):
    """Composer inputs are malformed or not all from the same shape class."""
