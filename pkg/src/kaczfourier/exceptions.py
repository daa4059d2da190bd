"""Exception and warning types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input object violates its invariants.

    ``field`` names the offending field (dotted path) when known, and
    ``line`` carries a source line number for file-level errors.
    """

    def __init__(self, message, field=None, line=None):
        super().__init__(message)
        self.field = field
        self.line = line

    def __str__(self):
        msg = super().__str__()
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.field is not None:
            where.append(f"field '{self.field}'")
        return f"{msg} ({', '.join(where)})" if where else msg


class SingularityError(ValidationError):
    """Two measures that must be mutually singular share support."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class ResourceError(RuntimeError):
    """The requested size exceeds a configured cap."""


class ConditioningWarning(RuntimeWarning):
    """Recursively computed coefficients have grown large enough to be suspect."""
