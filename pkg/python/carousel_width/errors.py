"""
Exception hierarchy for carousel-width.

All errors raised on purpose by the library derive from ``CarouselWidthError``.
Input problems also derive from ``ValueError`` so callers that only know the
standard library can still catch them.
"""

from typing import List, Sequence


class CarouselWidthError(Exception):
    """Base class for every error raised by carousel-width."""


class ConfigurationError(CarouselWidthError, ValueError):
    """A cap, environment override or CLI value is invalid."""


class ValidationError(CarouselWidthError, ValueError):
    """An operation received arguments outside its domain."""


class InvalidTripleError(ValidationError):
    """A triple kind was used with an incompatible size or index."""


class InvalidPartitionError(ValidationError):
    """A vertex partition overlaps, misses vertices or is out of range."""


class InvalidDecompositionError(ValidationError):
    """A tree decomposition is not a cubic tree over the graph's vertices."""


class InvalidSpecError(ValidationError):
    """A carousel specification violates one or more clauses."""

    def __init__(self, violations: Sequence[object]):
        self.violations: List[object] = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid carousel spec: {lines}")


class CapExceededError(CarouselWidthError):
    """A configured size cap was exceeded."""

    def __init__(self, cap_name: str, limit: int, actual: int):
        self.cap_name = cap_name
        self.limit = limit
        self.actual = actual
        super().__init__(f"{cap_name} cap exceeded: {actual} > {limit}")


class FormatError(CarouselWidthError, ValueError):
    """Unknown format or malformed serialized data."""


class WitnessError(CarouselWidthError):
    """A rank witness failed re-verification against the graph."""
