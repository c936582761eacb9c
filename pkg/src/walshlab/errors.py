"""Exception types shared across the laboratory.

The CLI maps these onto process exit codes, so library code should raise
the most specific type that applies rather than bare ValueError when the
failure is about resources, weight degeneracy, or violated preconditions.
"""

__all__ = [
    "WalshLabError",
    "DegreeError",
    "DegenerateWeightsError",
    "PreconditionError",
    "ResourceCapError",
    "ConfigError",
]


class WalshLabError(Exception):
    """Base class for laboratory-specific failures."""


class DegreeError(WalshLabError, ValueError):
    """A spectral index or polynomial degree exceeds the resolution."""


class DegenerateWeightsError(WalshLabError, ValueError):
    """A weight prefix sum Q_n vanished where a mean needs to divide by it."""


class PreconditionError(WalshLabError, ValueError):
    """A mathematical hypothesis of the requested check does not hold."""


class ResourceCapError(WalshLabError, RuntimeError):
    """The requested grid would exceed the configured memory cap."""


class ConfigError(WalshLabError, ValueError):
    """A run configuration (file or flags) could not be validated."""
