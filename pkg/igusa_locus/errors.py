"""
Error types shared by every module of the engine.

Domain errors are caller mistakes and map to exit code 2 in the CLI.
Consistency errors mean a proven invariant failed and are never caught
inside the engine.
"""


class LocusError(Exception):
    """Base class for all engine errors."""


class DomainError(LocusError, ValueError):
    """An argument lies outside the domain of an operation."""


class InadmissibleDiscriminant(DomainError):
    """D is not the discriminant of an indefinite division algebra over Q."""


class CatalogError(LocusError):
    """The order catalog could not be read or failed validation."""


class ConfigError(LocusError, ValueError):
    """A configuration value is out of range."""


class SearchExhausted(LocusError):
    """A bounded witness search ended without a witness."""


class ConsistencyError(LocusError):
    """An internal invariant was violated."""
