"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed geometric input (dimension mismatch, empty generators, ...)."""


class ValidationError(ValueError):
    """A polyhedral complex violates a structural invariant."""


class ParseError(ValueError):
    """Tropical polynomial text could not be parsed.

    Carries the character offset of the offending token.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SchemaError(ValueError):
    """A JSON document does not match the expected schema.

    Carries the path of the offending entry, e.g. ``points[3][0]``.
    """

    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}")
        self.path = path
