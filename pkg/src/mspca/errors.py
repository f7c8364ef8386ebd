"""Exception taxonomy shared across the package.

The CLI maps these onto process exit codes: configuration problems exit 1,
data problems exit 2, numeric failures exit 3.
"""


class MspcaError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(MspcaError):
    """Invalid configuration, flag combination, or parameter value."""


class DataError(MspcaError):
    """Malformed, missing, or unusable input data."""


class NumericError(MspcaError):
    """A non-finite value appeared in a numeric computation."""


class UndefinedAUCError(MspcaError):
    """AUC requested for a series whose labels contain only one class."""
