"""MSR code data models."""

from .erasure import TYPE_ROLES, TYPE_WEIGHTS, ErasureType, GroupSwap, weighted_size
from .repair import HelperRequest, RepairPlan, RepairTranscript
from .report import BenchResult, SweepRecord, SweepReport
from .storage import MANIFEST_NAME, ChunkHeader, Manifest, chunk_name, symbol_width

__all__ = [
    # Erasure models
    "ErasureType",
    "GroupSwap",
    "TYPE_ROLES",
    "TYPE_WEIGHTS",
    "weighted_size",
    # Repair models
    "HelperRequest",
    "RepairPlan",
    "RepairTranscript",
    # Reports
    "BenchResult",
    "SweepRecord",
    "SweepReport",
    # Storage
    "ChunkHeader",
    "Manifest",
    "MANIFEST_NAME",
    "chunk_name",
    "symbol_width",
]
