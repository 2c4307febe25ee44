"""Verification and benchmark report models."""

from fractions import Fraction
from typing import Literal

from pydantic import BaseModel, ConfigDict


class SweepRecord(BaseModel):
    """One exercised case: an erasure set, a repair or a type vector."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["mds", "repair", "type"]
    pattern: str
    passed: bool
    bandwidth: int | None = None

    def to_line(self) -> str:
        bandwidth = "-" if self.bandwidth is None else str(self.bandwidth)
        result = "pass" if self.passed else "fail"
        return f"{self.kind} {self.pattern} {result} {bandwidth}"


class SweepReport(BaseModel):
    """All records of a sweep over one code instance."""

    n: int
    k: int
    p: int
    records: list[SweepRecord] = []

    def of_kind(self, kind: str) -> list[SweepRecord]:
        return [rec for rec in self.records if rec.kind == kind]

    def passed(self, kind: str) -> int:
        return sum(1 for rec in self.of_kind(kind) if rec.passed)

    def total(self, kind: str) -> int:
        return len(self.of_kind(kind))

    @property
    def ok(self) -> bool:
        return all(rec.passed for rec in self.records)

    def summary(self, kinds: tuple[str, ...] = ("mds", "repair", "type")) -> str:
        parts = [
            f"{kind} {self.passed(kind)}/{self.total(kind)} pass"
            for kind in kinds
            if self.total(kind)
        ]
        return ", ".join(parts)

    def to_lines(self) -> list[str]:
        return [rec.to_line() for rec in self.records]


class BenchResult(BaseModel):
    """Timings and repair bandwidth for one instance."""

    n: int
    k: int
    p: int
    ell: int
    trials: int
    encode_seconds: float
    decode_seconds: float
    repair_seconds: float
    repair_symbols: int
    naive_symbols: int
    cut_set_bound: int

    @property
    def ratio(self) -> Fraction:
        """Repair download over the naive k*ell download."""
        return Fraction(self.repair_symbols, self.naive_symbols)
