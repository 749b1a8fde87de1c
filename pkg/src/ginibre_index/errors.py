"""Semantic exception hierarchy for the package."""


class GinibreIndexError(Exception):
    """Base class for all package errors."""


class DomainError(GinibreIndexError, ValueError):
    """Input outside the mathematical domain of an operation."""


class SingularConfigurationError(GinibreIndexError):
    """Particle configuration with coincident points (infinite energy)."""


class InfeasibleSectorError(GinibreIndexError, ValueError):
    """Requested index sector contains no reachable value."""


class InsufficientSamplingError(GinibreIndexError, RuntimeError):
    """A Monte Carlo estimate could not be formed from the recorded visits."""
