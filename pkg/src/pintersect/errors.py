"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """Raised for malformed inputs or incompatible graph kinds."""


class ParseError(InvalidArgument):
    """A digit-string could not be decoded; ``position`` is the offending index."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class CapacityError(RuntimeError):
    """An enumeration guard would be exceeded."""


class CoverError(ValueError):
    """A block collection is not a uniform cover."""

    def __init__(self, message: str, coordinate: int | None = None):
        super().__init__(message)
        self.coordinate = coordinate
