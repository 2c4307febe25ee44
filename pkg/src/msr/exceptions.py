"""Custom exceptions for the MSR code library.

None of these derive from ``ValueError``: pydantic converts ``ValueError``
raised inside validators into its own ``ValidationError``, and construction
errors must reach the caller unchanged.
"""


class MSRError(Exception):
    """Base exception for MSR code operations."""


class InvalidParametersError(MSRError):
    """Code parameters (n, k, lambdas) are not acceptable."""


class FieldTooSmallError(MSRError):
    """The field modulus is too small for the requested code length."""


class FieldMismatchError(MSRError):
    """Operands belong to different prime fields."""


class DivisionByZeroError(MSRError, ZeroDivisionError):
    """Inverse of the zero element was requested."""


class TooManyErasuresError(MSRError):
    """More nodes are missing than the code can recover."""


class InconsistentSurvivorsError(MSRError):
    """Surviving symbols do not belong to any codeword."""


class DecodeError(MSRError):
    """A decoding system that should be invertible turned out singular."""


class WrongHelperCountError(MSRError):
    """Repair was requested with a helper set of the wrong size or shape."""


class PlanMismatchError(MSRError):
    """Helper data does not match what the repair plan requested."""


class Case1OnlyError(MSRError):
    """The filter construction only applies when r = 3 * z1."""


class InstanceTooLargeError(MSRError):
    """Exhaustive sweeps are refused above the configured size guard."""


class ChunkFormatError(MSRError):
    """A chunk file is malformed or disagrees with its manifest."""


class ManifestError(MSRError):
    """A manifest file is missing, malformed or inconsistent."""
