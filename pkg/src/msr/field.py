"""Prime-field arithmetic GF(p).

Field elements are galois ``FieldArray`` scalars; every module above this one
works with galois arrays of the class returned by :func:`field_for`.
"""

from __future__ import annotations

import logging
from functools import lru_cache

import galois
from pydantic import BaseModel, ConfigDict, field_validator

from .exceptions import DivisionByZeroError, FieldMismatchError, FieldTooSmallError, InvalidParametersError

log = logging.getLogger(__name__)

# One byte must map injectively to one symbol when coding files.
FILE_MODE_MIN_MODULUS = 257

FieldElement = galois.FieldArray


class FieldModulus(BaseModel):
    """A prime modulus p for GF(p)."""

    model_config = ConfigDict(frozen=True)

    p: int

    @field_validator("p")
    @classmethod
    def _check_prime(cls, value: int) -> int:
        if value < 2 or not galois.is_prime(value):
            raise InvalidParametersError(f"Field modulus {value} is not prime")
        return value

    def check_length(self, n: int) -> None:
        """Raise FieldTooSmallError unless p >= 2n+1."""
        if self.p < 2 * n + 1:
            raise FieldTooSmallError(
                f"Field GF({self.p}) is too small for n={n}: need p >= 2n+1 = {2 * n + 1}"
            )

    @property
    def field(self) -> type[galois.FieldArray]:
        return field_for(self.p)


@lru_cache(maxsize=None)
def field_for(p: int) -> type[galois.FieldArray]:
    """Return the (cached) galois class for GF(p)."""
    log.debug("Creating field class GF(%d)", p)
    return galois.GF(p)


def smallest_prime_at_least(value: int) -> int:
    if value <= 2:
        return 2
    return int(galois.next_prime(value - 1))


def minimum_modulus(n: int) -> int:
    """Smallest prime p with p >= 2n+1."""
    return smallest_prime_at_least(2 * n + 1)


def default_modulus(n: int) -> int:
    """Smallest prime p with p >= max(2n+1, 257)."""
    return smallest_prime_at_least(max(2 * n + 1, FILE_MODE_MIN_MODULUS))


def element(p: int, value: int) -> FieldElement:
    """Canonical element ``value mod p`` of GF(p)."""
    return field_for(p)(value % p)


def _same_field(a: FieldElement, b: FieldElement) -> None:
    if type(a) is not type(b):
        raise FieldMismatchError(
            f"Operands live in different fields: GF({type(a).order}) and GF({type(b).order})"
        )


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    """Multiplicative inverse; raises DivisionByZeroError for 0."""
    if int(a) == 0:
        raise DivisionByZeroError(f"0 has no inverse in GF({type(a).order})")
    return a ** -1
