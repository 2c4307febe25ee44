"""Dense matrix algebra over GF(p) on top of galois FieldArrays.

Singularity is reported as a value (:class:`NoUniqueSolution`,
:class:`Singular`) rather than raised, because decoding and the
verification oracles branch on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import galois
import numpy as np

from .exceptions import InvalidParametersError
from .field import FieldElement, field_for

Matrix = galois.FieldArray


@dataclass(frozen=True)
class NoUniqueSolution:
    """The system is singular or has no solution at all."""

    reason: Literal["singular", "inconsistent"]

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Singular:
    """Returned by :func:`invert` for a non-invertible matrix."""

    def __bool__(self) -> bool:
        return False


def matrix(p: int, rows: list[list[int]]) -> Matrix:
    """Build a GF(p) matrix from nested integer lists."""
    return field_for(p)(np.asarray(rows, dtype=np.int64) % p)


def _require_square(a: Matrix) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidParametersError(f"Expected a square matrix, got shape {a.shape}")


def left_inverse(a: Matrix) -> tuple[Matrix, Matrix] | NoUniqueSolution:
    """Left inverse of a tall matrix with full column rank.

    Row-reduces [A | I]. With m = cols(A), the first m rows of the right
    half form L with L @ A = I_m; the remaining rows form N with N @ A = 0,
    i.e. the consistency checks of any system A x = b.

    Returns:
        (L, N), or NoUniqueSolution("singular") when rank(A) < cols(A)
    """
    rows, cols = a.shape
    if rows < cols:
        return NoUniqueSolution("singular")
    gf = type(a)
    augmented = np.concatenate(
        [a.view(np.ndarray), np.eye(rows, dtype=np.int64)], axis=1
    ).astype(np.int64)
    reduced = gf(augmented).row_reduce(ncols=cols)
    if not np.array_equal(reduced[:cols, :cols], gf.Identity(cols)):
        return NoUniqueSolution("singular")
    return reduced[:cols, cols:], reduced[cols:, cols:]


def solve(a: Matrix, b: Matrix) -> Matrix | NoUniqueSolution:
    """Unique x with A x = b.

    A may be square or tall; b may be a vector or a matrix of right-hand
    sides (one per column).
    """
    if b.shape[0] != a.shape[0]:
        raise InvalidParametersError(
            f"Right-hand side has {b.shape[0]} rows, matrix has {a.shape[0]}"
        )
    found = left_inverse(a)
    if isinstance(found, NoUniqueSolution):
        return found
    left, checks = found
    if checks.shape[0] and np.any(checks @ b):
        return NoUniqueSolution("inconsistent")
    return left @ b


def determinant(a: Matrix) -> FieldElement:
    _require_square(a)
    return np.linalg.det(a)


def invert(a: Matrix) -> Matrix | Singular:
    _require_square(a)
    try:
        return np.linalg.inv(a)
    except np.linalg.LinAlgError:
        return Singular()


def is_invertible(a: Matrix) -> bool:
    _require_square(a)
    return int(np.linalg.matrix_rank(a)) == a.shape[0]
