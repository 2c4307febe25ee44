"""Command-line front end for MSR array codes."""

__version__ = "0.1.0"
