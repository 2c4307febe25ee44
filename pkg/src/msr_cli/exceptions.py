"""Custom exceptions for the MSR CLI."""

from msr.exceptions import MSRError


class MSRCLIError(MSRError):
    """Base exception for the MSR CLI."""


class ConfigError(MSRCLIError):
    """Configuration error."""
