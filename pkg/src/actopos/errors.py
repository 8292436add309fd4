"""Exception types shared across the package."""

from __future__ import annotations


class ActoposError(Exception):
    """Base class for all package errors."""


class ValidationError(ActoposError):
    """An input table violates a structural law."""


class AssocViolation(ValidationError):
    def __init__(self, a: int, b: int, c: int):
        self.triple = (a, b, c)
        super().__init__(f"associativity fails at a={a} b={b} c={c}")


class IdentityViolation(ValidationError):
    def __init__(self, a: int):
        self.element = a
        super().__init__(f"identity law fails at element {a}")


class RangeError(ValidationError):
    """Table is not square or an entry is out of range."""


class EmptySeed(ValidationError):
    """A closure operation was seeded with the empty set."""


class MonoidMismatch(ActoposError):
    """Operands live over different monoids."""


class EndpointMismatch(ActoposError):
    """Morphisms do not share the required sources/targets."""


class ShapeMismatch(ActoposError):
    """A morphism does not have the shape an operation requires."""


class NotSubMSet(ActoposError):
    """A subset is not closed under the monoid action."""


class CapExceeded(ActoposError):
    def __init__(self, what: str, cap: int):
        self.what = what
        self.cap = cap
        super().__init__(f"{what} exceeds cap {cap}")


class BoundTooSmall(ActoposError):
    """A bounded check received no instances, or a guaranteed witness
    would not fit inside the configured caps."""


class CrossCheckError(ActoposError):
    """Two independent routes to the same verdict disagree: either an
    implementation bug or a bound too small to contain the witness."""
