"""MSR code facade."""

from __future__ import annotations

from collections.abc import Iterable, Mapping

import galois
import numpy as np

from .codec import (
    DecodeMethod,
    decode_erasures,
    decoder_for,
    encode,
    random_codeword,
    verify_codeword,
)
from .construct import CodeParams, build_parity_blocks
from .models.repair import RepairPlan, RepairTranscript
from .repair import cut_set_bound, helper_response, plan_repair, repair_node, repairer_for


class MSRCode:
    """High-level handle on one (n, k) code instance.

    This is the main entry point of the library: it owns the parameters and
    parity blocks and exposes encoding, decoding and repair.

    Example:
        >>> with MSRCode(n=9, k=5) as code:
        ...     word = code.encode(data)
        ...     plan = code.plan_repair(0)
        ...     sent = {j: code.helper_response(plan, word[j]) for j in range(1, 7)}
        ...     code.repair(0, sent).recovered
    """

    def __init__(
        self,
        n: int,
        k: int,
        p: int | None = None,
        lambdas: tuple[int, ...] | None = None,
    ):
        """Build the instance.

        Args:
            n: Code length (multiple of 3)
            k: Number of data nodes
            p: Prime modulus; defaults to the smallest prime >= max(2n+1, 257)
            lambdas: Explicit lambda values; chosen deterministically when omitted
        """
        self.params = CodeParams.create(n, k, p=p, lambdas=lambdas)
        self.blocks = build_parity_blocks(self.params)

    @classmethod
    def from_params(cls, params: CodeParams) -> MSRCode:
        return cls(params.n, params.k, p=params.p, lambdas=params.lambdas)

    def __enter__(self):
        """Context manager entry."""
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        """Context manager exit."""
        self.close()

    def close(self):
        """Drop the precomputed decoders and repairers of every instance."""
        decoder_for.cache_clear()
        repairer_for.cache_clear()

    @property
    def field(self) -> type[galois.FieldArray]:
        return self.params.field

    @property
    def cut_set_bound(self) -> int:
        return cut_set_bound(self.params)

    def encode(self, data: object) -> galois.FieldArray:
        return encode(self.params, self.blocks, data)

    def decode(
        self, word: object, erased: Iterable[int], method: DecodeMethod = "structured"
    ) -> galois.FieldArray:
        return decode_erasures(self.params, self.blocks, word, erased, method)

    def verify(self, word: object) -> bool:
        return verify_codeword(self.params, self.blocks, word)

    def random_codeword(self, seed: int | np.random.Generator | None = None) -> galois.FieldArray:
        return random_codeword(self.params, self.blocks, seed)

    def plan_repair(self, failed: int) -> RepairPlan:
        return plan_repair(self.params, failed)

    def helper_response(self, plan: RepairPlan, column: galois.FieldArray) -> galois.FieldArray:
        return helper_response(plan, column)

    def repair(
        self, failed: int, helper_data: Mapping[int, galois.FieldArray]
    ) -> RepairTranscript:
        """Repair ``failed`` from the helpers that sent data (keys of helper_data)."""
        return repair_node(self.params, self.blocks, failed, list(helper_data), helper_data)
