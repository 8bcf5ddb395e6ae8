"""Semantic exception types shared across the library."""


class DomainError(ValueError):
    """A parameter lies outside the mathematical domain of the requested quantity."""


class FeasibilityError(ValueError):
    """An absorption-parameter choice violates its feasibility constraint."""


class PreconditionError(ValueError):
    """A caller-supplied precondition could not be certified."""
