"""Explicit MSR array codes with subpacketization 2^(n/3)."""

from .code import MSRCode
from .construct import CodeParams, ParityBlocks, build_parity_blocks, select_lambdas
from .exceptions import (
    Case1OnlyError,
    ChunkFormatError,
    DecodeError,
    DivisionByZeroError,
    FieldMismatchError,
    FieldTooSmallError,
    InconsistentSurvivorsError,
    InstanceTooLargeError,
    InvalidParametersError,
    ManifestError,
    MSRError,
    PlanMismatchError,
    TooManyErasuresError,
    WrongHelperCountError,
)

__all__ = [
    "MSRCode",
    "CodeParams",
    "ParityBlocks",
    "build_parity_blocks",
    "select_lambdas",
    "MSRError",
    "InvalidParametersError",
    "FieldTooSmallError",
    "FieldMismatchError",
    "DivisionByZeroError",
    "TooManyErasuresError",
    "InconsistentSurvivorsError",
    "DecodeError",
    "WrongHelperCountError",
    "PlanMismatchError",
    "Case1OnlyError",
    "InstanceTooLargeError",
    "ChunkFormatError",
    "ManifestError",
]
