"""Encoding, erasure classification, group swaps and erasure decoding.

A codeword is a galois array of shape ``(n, ell)``; every operation here
also accepts a batch of stripes shaped ``(..., n, ell)``.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from functools import lru_cache
from typing import Literal

import galois
import numpy as np

from .construct import CodeParams, ParityBlocks, build_parity_blocks, digit
from .exceptions import (
    DecodeError,
    InconsistentSurvivorsError,
    InvalidParametersError,
    TooManyErasuresError,
)
from .linalg import NoUniqueSolution, left_inverse
from .models.erasure import TYPE_ROLES, ErasureType, GroupSwap, weighted_size

log = logging.getLogger(__name__)

Codeword = galois.FieldArray
DecodeMethod = Literal["generic", "structured"]

_ROLE_TO_TYPE = {roles: t for t, roles in enumerate(TYPE_ROLES)}


def as_words(params: CodeParams, words: object, nodes: int | None = None) -> galois.FieldArray:
    """Coerce ``words`` to a GF(p) array whose last two axes are (nodes, ell)."""
    gf = params.field
    nodes = params.n if nodes is None else nodes
    arr = words if isinstance(words, gf) else gf(np.asarray(words, dtype=np.int64))
    if arr.ndim < 2 or arr.shape[-2:] != (nodes, params.ell):
        raise InvalidParametersError(
            f"Expected symbols shaped (..., {nodes}, {params.ell}), got {arr.shape}"
        )
    return arr


def _check_nodes(params: CodeParams, nodes: Iterable[int]) -> tuple[int, ...]:
    found = tuple(sorted(set(int(i) for i in nodes)))
    for node in found:
        if not 0 <= node < params.n:
            raise InvalidParametersError(f"Node {node} is outside [0, {params.n})")
    return found


def verify_codeword(params: CodeParams, blocks: ParityBlocks, cw: object) -> bool:
    """True iff every parity check row sum_i sum_b A_i(a, b) C_i(b) vanishes.

    For a batch, true only when every stripe passes.
    """
    words = as_words(params, cw)
    flat = words.reshape(-1, params.n * params.ell)
    syndromes = flat @ blocks.parity_check.T
    return not np.any(syndromes)


def classify_erasure(params: CodeParams, erased: Iterable[int]) -> ErasureType:
    """Sort the groups touched by ``erased`` into the seven failure shapes."""
    nodes = _check_nodes(params, erased)
    members: list[list[int]] = [[] for _ in TYPE_ROLES]
    for group in range(params.groups):
        roles = tuple(node - 3 * group for node in nodes if node // 3 == group)
        if roles:
            members[_ROLE_TO_TYPE[roles]].append(group)
    z = tuple(len(m) for m in members)
    return ErasureType(z=z, groups=tuple(tuple(m) for m in members))  # type: ignore[arg-type]


def canonical_pattern(z: Sequence[int]) -> set[int]:
    """Erasure pattern of type z with groups laid out G1 first through G7 last."""
    if len(z) != 7 or any(c < 0 for c in z):
        raise InvalidParametersError(f"A type vector has seven non-negative entries, got {z}")
    pattern: set[int] = set()
    group = 0
    for count, roles in zip(z, TYPE_ROLES):
        for _ in range(count):
            pattern.update(3 * group + role for role in roles)
            group += 1
    return pattern


def swap_digits(a: int, i: int, j: int) -> int:
    """Exchange binary digits i and j of a."""
    if digit(a, i) == digit(a, j):
        return a
    return a ^ ((1 << i) | (1 << j))


def group_swap_params(params: CodeParams, swap: GroupSwap) -> CodeParams:
    """Instance with the lambda sextets of groups i and j exchanged."""
    swap.check_groups(params.groups)
    lambdas = list(params.lambdas)
    si, sj = slice(6 * swap.i, 6 * swap.i + 6), slice(6 * swap.j, 6 * swap.j + 6)
    lambdas[si], lambdas[sj] = lambdas[sj], lambdas[si]
    return CodeParams(n=params.n, k=params.k, p=params.p, lambdas=tuple(lambdas))


def _swap_permutations(n: int, ell: int, swap: GroupSwap) -> tuple[np.ndarray, np.ndarray]:
    nodes = np.arange(n)
    for t in range(3):
        nodes[3 * swap.i + t], nodes[3 * swap.j + t] = 3 * swap.j + t, 3 * swap.i + t
    coords = np.array([swap_digits(a, swap.i, swap.j) for a in range(ell)])
    return nodes, coords


def group_swap_word(cw: galois.FieldArray, swap: GroupSwap) -> galois.FieldArray:
    """Apply P_{i<->j}: W_k(a) = C_{pi(k)}(P(a)) with pi exchanging the two groups."""
    n, ell = cw.shape[-2:]
    swap.check_groups(n // 3)
    nodes, coords = _swap_permutations(n, ell, swap)
    return cw[..., nodes, :][..., coords]


def apply_swaps(
    params: CodeParams, cw: galois.FieldArray | None, swaps: Sequence[GroupSwap]
) -> tuple[CodeParams, galois.FieldArray | None]:
    for swap in swaps:
        params = group_swap_params(params, swap)
        if cw is not None:
            cw = group_swap_word(cw, swap)
    return params, cw


def undo_swaps(
    params: CodeParams, cw: galois.FieldArray | None, swaps: Sequence[GroupSwap]
) -> tuple[CodeParams, galois.FieldArray | None]:
    """Each swap is an involution, so undoing replays them in reverse."""
    return apply_swaps(params, cw, list(reversed(swaps)))


def canonicalize(
    params: CodeParams, erased: Iterable[int]
) -> tuple[list[GroupSwap], set[int], ErasureType]:
    """Group swaps taking ``erased`` to its canonical pattern.

    Touched groups are ordered by type rank, ties by original index;
    untouched groups follow in their original order. The target order is
    reached with selection-sort swaps.
    """
    etype = classify_erasure(params, erased)
    ranked = sorted(
        range(params.groups),
        key=lambda g: (t if (t := etype.type_of(g)) is not None else len(TYPE_ROLES), g),
    )
    current = list(range(params.groups))
    swaps: list[GroupSwap] = []
    for position, wanted in enumerate(ranked):
        at = current.index(wanted)
        if at != position:
            swaps.append(GroupSwap(i=position, j=at))
            current[position], current[at] = current[at], current[position]
    return swaps, canonical_pattern(etype.z), etype


class ErasureDecoder:
    """Precomputed linear map from surviving symbols to erased ones.

    ``generic`` solves the full r*ell x |F|*ell column selection of the
    parity check matrix. ``structured`` first moves the erasures to their
    canonical pattern with group swaps; the erased nodes then sit in the
    first z groups and the system splits into ell/2^z identical
    (2^z r) x (|F| 2^z) systems built from the top-left corners A_i^(2^z).
    """

    def __init__(
        self,
        blocks: ParityBlocks,
        erased: Iterable[int],
        method: DecodeMethod = "structured",
    ):
        self.blocks = blocks
        self.params = blocks.params
        self.erased = _check_nodes(self.params, erased)
        self.method = method
        if len(self.erased) > self.params.r:
            raise TooManyErasuresError(
                f"{len(self.erased)} nodes erased but the code corrects at most r={self.params.r}"
            )
        self.survivors = tuple(i for i in range(self.params.n) if i not in self.erased)
        if method == "generic":
            self._prepare_generic()
        elif method == "structured":
            self._prepare_structured()
        else:
            raise InvalidParametersError(f"Unknown decode method {method!r}")
        log.debug(
            "Prepared %s decoder for erasures %s (n=%d, k=%d)",
            method,
            list(self.erased),
            self.params.n,
            self.params.k,
        )

    @staticmethod
    def _columns(nodes: Sequence[int], ell: int) -> np.ndarray:
        return np.array([node * ell + b for node in nodes for b in range(ell)], dtype=np.int64)

    def _solver(self, system: galois.FieldArray) -> tuple[galois.FieldArray, galois.FieldArray]:
        found = left_inverse(system)
        if isinstance(found, NoUniqueSolution):
            raise DecodeError(
                f"Decoding system for erasures {list(self.erased)} is {found.reason}"
            )
        return found

    def _prepare_generic(self) -> None:
        ell = self.params.ell
        h = self.blocks.parity_check
        h_surv = h[:, self._columns(self.survivors, ell)]
        if not self.erased:
            self._recover = None
            self._checks = h_surv
            return
        left, null = self._solver(h[:, self._columns(self.erased, ell)])
        self._recover = -(left @ h_surv)
        self._checks = null @ h_surv if null.shape[0] else None

    def _prepare_structured(self) -> None:
        params = self.params
        swaps, canonical, etype = canonicalize(params, self.erased)
        self.swaps = swaps
        self.canonical_erased = tuple(sorted(canonical))
        self.canonical_params, _ = apply_swaps(params, None, swaps)
        self.canonical_blocks = build_parity_blocks(self.canonical_params)
        self.u = 1 << etype.total
        canon_survivors = tuple(i for i in range(params.n) if i not in canonical)
        self._syndrome = self.canonical_blocks.parity_check[
            :, self._columns(canon_survivors, params.ell)
        ]
        if not canonical:
            self._chunk_left = None
            self._chunk_checks = None
            return
        corners = [
            self.canonical_blocks.submatrix(node, self.u).view(np.ndarray)
            for node in self.canonical_erased
        ]
        left, null = self._solver(params.field(np.hstack(corners)))
        self._chunk_left = left
        self._chunk_checks = null if null.shape[0] else None

    def decode(self, cw: object) -> galois.FieldArray:
        """Fill the erased nodes of one word or a batch of words.

        The erased positions of the input are ignored.

        Raises:
            InconsistentSurvivorsError: Survivors fit no codeword
        """
        params = self.params
        words = as_words(params, cw)
        batch_shape = words.shape[:-2]
        words = words.reshape(-1, params.n, params.ell).copy()
        if self.method == "generic":
            filled = self._decode_generic(words)
        else:
            filled = self._decode_structured(words)
        if not verify_codeword(params, self.blocks, filled):
            raise InconsistentSurvivorsError(
                f"Surviving nodes {list(self.survivors)} are not part of any codeword"
            )
        return filled.reshape(*batch_shape, params.n, params.ell)

    def _decode_generic(self, words: galois.FieldArray) -> galois.FieldArray:
        ell = self.params.ell
        surv = words[:, list(self.survivors), :].reshape(words.shape[0], -1)
        if self._checks is not None and np.any(surv @ self._checks.T):
            raise InconsistentSurvivorsError("Surviving symbols violate the parity checks")
        if self._recover is not None:
            found = surv @ self._recover.T
            words[:, list(self.erased), :] = found.reshape(-1, len(self.erased), ell)
        return words

    def _decode_structured(self, words: galois.FieldArray) -> galois.FieldArray:
        params = self.params
        ell, r, u = params.ell, params.r, self.u
        batch = words.shape[0]
        _, canon = apply_swaps(params, words, self.swaps)
        assert canon is not None
        canon_surv = [i for i in range(params.n) if i not in self.canonical_erased]
        syndrome = canon[:, canon_surv, :].reshape(batch, -1) @ self._syndrome.T
        if self._chunk_left is None:
            if np.any(syndrome):
                raise InconsistentSurvivorsError("Surviving symbols violate the parity checks")
            return words
        # Row a*r+t with a = j*u + w: chunk j holds u*r consecutive rows.
        chunks = syndrome.reshape(batch * (ell // u), u * r)
        if self._chunk_checks is not None and np.any(chunks @ self._chunk_checks.T):
            raise InconsistentSurvivorsError("Surviving symbols violate the parity checks")
        found = -(chunks @ self._chunk_left.T)
        erased_count = len(self.canonical_erased)
        values = found.reshape(batch, ell // u, erased_count, u).transpose(0, 2, 1, 3)
        canon[:, list(self.canonical_erased), :] = values.reshape(batch, erased_count, ell)
        _, restored = undo_swaps(self.canonical_params, canon, self.swaps)
        assert restored is not None
        return restored


@lru_cache(maxsize=256)
def decoder_for(
    blocks: ParityBlocks, erased: tuple[int, ...], method: DecodeMethod = "structured"
) -> ErasureDecoder:
    return ErasureDecoder(blocks, erased, method)


def decode_erasures(
    params: CodeParams,
    blocks: ParityBlocks,
    cw: object,
    erased: Iterable[int],
    method: DecodeMethod = "structured",
) -> galois.FieldArray:
    """Recover the nodes in ``erased`` from the others.

    Raises:
        TooManyErasuresError: More than r nodes erased
        InconsistentSurvivorsError: The survivors belong to no codeword
    """
    nodes = _check_nodes(params, erased)
    if len(nodes) > params.r:
        raise TooManyErasuresError(
            f"{len(nodes)} nodes erased but the code corrects at most r={params.r}"
        )
    return decoder_for(blocks, nodes, method).decode(cw)


def encode(
    params: CodeParams,
    blocks: ParityBlocks,
    data: object,
    method: DecodeMethod = "generic",
) -> galois.FieldArray:
    """Systematic encoding: nodes 0..k-1 carry ``data``, the r parity nodes are decoded."""
    data = as_words(params, data, nodes=params.k)
    shape = (*data.shape[:-2], params.n, params.ell)
    words = params.field.Zeros(shape)
    words[..., : params.k, :] = data
    parity = tuple(range(params.k, params.n))
    return decoder_for(blocks, parity, method).decode(words)


def random_codeword(
    params: CodeParams,
    blocks: ParityBlocks,
    rng: np.random.Generator | int | None = None,
    stripes: int | None = None,
) -> galois.FieldArray:
    """Encode uniformly random data; one word, or ``stripes`` words when given."""
    rng = np.random.default_rng(rng)
    shape = (params.k, params.ell) if stripes is None else (stripes, params.k, params.ell)
    data = params.field.Random(shape, seed=rng)
    return encode(params, blocks, data)


def erasure_weight(params: CodeParams, erased: Iterable[int]) -> int:
    """Weighted count 3z1 + 2(z2+z3+z4) + z5+z6+z7; equals |F|."""
    return weighted_size(classify_erasure(params, erased).z)
