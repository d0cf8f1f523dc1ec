"""Shared exception types."""


class DimensionError(ValueError):
    """Operands have incompatible sizes or arities."""


class SingularMatrixError(ArithmeticError):
    """A square system has no unique solution."""


class CapacityError(RuntimeError):
    """A configured resource guard was exceeded; carries the bound's name."""

    def __init__(self, bound_name: str, limit, actual=None):
        self.bound_name = bound_name
        self.limit = limit
        self.actual = actual
        detail = f"limit {limit}" if actual is None else f"limit {limit}, needed {actual}"
        super().__init__(f"capacity guard '{bound_name}' exceeded ({detail})")


class OracleError(RuntimeError):
    """An external objective oracle failed or replied with garbage."""


class ProblemError(ValueError):
    """A problem file or descriptor failed validation."""
