"""Exception types shared across the package.

The CLI maps these onto exit codes: invalid input is a usage error (1),
resource limits are 2, and invariant violations are 3.
"""


class VoteControlError(Exception):
    """Base class for all package errors."""


class InvalidInput(VoteControlError, ValueError):
    """Malformed data, violated preconditions, or mismatched arguments."""


class ResourceLimit(VoteControlError):
    """An exact search would exceed its configured size limit."""


class InvariantViolation(VoteControlError):
    """An internal cross-check disagreed (for example two oracles)."""


class ConfigurationError(VoteControlError):
    """A required external tool or setting is missing."""
