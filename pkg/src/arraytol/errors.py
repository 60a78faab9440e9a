"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input violates a documented precondition or invariant."""


class ConfigError(ValidationError):
    """Raised when a run configuration file or flag set is malformed."""
