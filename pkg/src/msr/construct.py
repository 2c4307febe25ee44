"""Code construction: parameters, lambda selection and parity blocks.

A codeword is n nodes of ell = 2^(n/3) symbols. Nodes 3i, 3i+1, 3i+2 form
group i, and group i owns the six constants lambda_{6i}..lambda_{6i+5} and
binary digit i of every coordinate index. The code is the kernel of

    sum_i sum_b A_i(a, b) * C_i(b) = 0    for every block row a,

where each nonzero block A_i(a, b) is a length-r column built from the
Vandermonde columns L_j = (1, lambda_j, ..., lambda_j^(r-1)).
"""

from __future__ import annotations

import logging
from functools import cached_property, lru_cache
from itertools import count

import galois
import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from .exceptions import InvalidParametersError
from .field import FieldElement, FieldModulus, default_modulus, field_for

log = logging.getLogger(__name__)

Block = galois.FieldArray
BlockMap = dict[tuple[int, int], Block]


def digit(a: int, i: int) -> int:
    """Binary digit i of a (digit 0 is the least significant)."""
    return (a >> i) & 1


def remove_digit(a: int, i: int) -> int:
    """Drop digit i of a, shifting the higher digits down."""
    low = a & ((1 << i) - 1)
    return low | ((a >> (i + 1)) << i)


def insert_digit(a: int, i: int, bit: int) -> int:
    """Inverse of :func:`remove_digit`: place ``bit`` at digit i."""
    low = a & ((1 << i) - 1)
    return low | (bit << i) | ((a >> i) << (i + 1))


def check_shape(n: int, k: int) -> None:
    """Validate (n, k) before anything field-related is computed."""
    if n < 3 or n % 3 != 0:
        raise InvalidParametersError(
            f"n={n} must be a positive multiple of 3; other lengths are obtained "
            "by puncturing (removing nodes from) a code whose length is divisible by 3"
        )
    if not 1 <= k <= n - 2:
        raise InvalidParametersError(f"k={k} must satisfy 1 <= k <= n-2 = {n - 2}")


class CodeParams(BaseModel):
    """Single source of truth for one code instance."""

    model_config = ConfigDict(frozen=True)

    n: int
    k: int
    p: int
    lambdas: tuple[int, ...]

    @model_validator(mode="after")
    def _check_instance(self) -> CodeParams:
        check_shape(self.n, self.k)
        FieldModulus(p=self.p).check_length(self.n)
        if len(self.lambdas) != 2 * self.n:
            raise InvalidParametersError(
                f"Expected {2 * self.n} lambdas for n={self.n}, got {len(self.lambdas)}"
            )
        if any(not 0 <= value < self.p for value in self.lambdas):
            raise InvalidParametersError(f"Every lambda must lie in [0, {self.p})")
        if len(set(self.lambdas)) != len(self.lambdas):
            raise InvalidParametersError("Lambdas must be pairwise distinct")
        for group in range(self.groups):
            if self.gamma(group, 1) == self.gamma(group, 2):
                raise InvalidParametersError(
                    f"Group {group} violates gamma_{{6i+1}} != gamma_{{6i+2}}"
                )
        return self

    @classmethod
    def create(
        cls,
        n: int,
        k: int,
        p: int | None = None,
        lambdas: tuple[int, ...] | None = None,
    ) -> CodeParams:
        """Build an instance, choosing p and the lambdas when omitted.

        Args:
            n: Code length (multiple of 3)
            k: Number of data nodes
            p: Prime modulus; defaults to the smallest prime >= max(2n+1, 257)
            lambdas: Explicit lambda values; defaults to :func:`select_lambdas`

        Returns:
            Validated CodeParams
        """
        check_shape(n, k)
        if p is None:
            p = default_modulus(n)
        modulus = FieldModulus(p=p)
        modulus.check_length(n)
        if lambdas is None:
            lambdas = tuple(int(v) for v in select_lambdas(n, modulus))
        return cls(n=n, k=k, p=p, lambdas=tuple(lambdas))

    @property
    def r(self) -> int:
        return self.n - self.k

    @property
    def d(self) -> int:
        return self.k + 1

    @property
    def groups(self) -> int:
        return self.n // 3

    @property
    def ell(self) -> int:
        return 1 << self.groups

    @property
    def modulus(self) -> FieldModulus:
        return FieldModulus(p=self.p)

    @property
    def field(self) -> type[galois.FieldArray]:
        return field_for(self.p)

    def lam(self, j: int) -> FieldElement:
        return self.field(self.lambdas[j])

    def lambda_sextet(self, group: int) -> tuple[int, ...]:
        return self.lambdas[6 * group : 6 * group + 6]

    def gamma(self, group: int, which: int) -> FieldElement:
        """gamma_{6i+1} (which=1) or gamma_{6i+2} (which=2) of group i."""
        if which not in (1, 2):
            raise InvalidParametersError(f"gamma index must be 1 or 2, got {which}")
        base = 6 * group
        x = self.lam(base + which)
        num = (x - self.lam(base + 3)) * (x - self.lam(base + 5))
        den = (x - self.lam(base)) * (x - self.lam(base + 4))
        return -(num / den)


def select_lambdas(n: int, modulus: FieldModulus) -> galois.FieldArray:
    """Choose 2n distinct lambdas, group by group, satisfying gamma_1 != gamma_2.

    Each group takes the seven smallest field elements not chosen so far,
    eta_0..eta_6, fixes lambda_{6i+j} = eta_j for j < 5 and picks
    lambda_{6i+5} from {eta_5, eta_6} avoiding the single root of
    xi * (lambda_{6i+1} - x) = lambda_{6i+2} - x.
    """
    modulus.check_length(n)
    gf = modulus.field
    chosen: list[int] = []
    for group in range(n // 3):
        taken = set(chosen)
        fresh = _first_free(taken, 7)
        eta = gf(fresh)
        l0, l1, l2, l3, l4 = eta[0], eta[1], eta[2], eta[3], eta[4]
        xi = ((l2 - l0) * (l2 - l4) * (l1 - l3)) / ((l1 - l0) * (l1 - l4) * (l2 - l3))
        if xi == 1:
            last = eta[5]
        else:
            root = (xi * l1 - l2) / (xi - gf(1))
            last = eta[5] if eta[5] != root else eta[6]
        log.debug("Group %d: xi=%d, lambdas=%s", group, int(xi), fresh[:5] + [int(last)])
        chosen.extend(fresh[:5])
        chosen.append(int(last))
    return gf(chosen)


def _first_free(taken: set[int], how_many: int) -> list[int]:
    free: list[int] = []
    for value in count():
        if value not in taken:
            free.append(value)
            if len(free) == how_many:
                return free
    return free


def gamma(params: CodeParams, group: int, which: int) -> FieldElement:
    return params.gamma(group, which)


def column_L(lam: FieldElement, r: int) -> galois.FieldArray:
    """Vandermonde column (1, lam, lam^2, ..., lam^(r-1))."""
    if r < 1:
        raise InvalidParametersError(f"Column length must be >= 1, got {r}")
    gf = type(lam)
    entries = [gf(1)]
    for _ in range(r - 1):
        entries.append(entries[-1] * lam)
    return gf([int(e) for e in entries])


class ParityBlocks:
    """Sparse block structure A_i(a, b) of every node.

    ``nodes[i]`` maps (a, b) to the length-r column of each nonzero block of
    A_i; absent keys are zero blocks.
    """

    def __init__(self, params: CodeParams, nodes: tuple[BlockMap, ...]):
        self.params = params
        self.nodes = nodes

    @property
    def field(self) -> type[galois.FieldArray]:
        return self.params.field

    def block(self, node: int, a: int, b: int) -> Block:
        found = self.nodes[node].get((a, b))
        if found is None:
            return self.field.Zeros(self.params.r)
        return found

    def nonzero_blocks(self, node: int) -> BlockMap:
        return self.nodes[node]

    def row(self, node: int, a: int) -> dict[int, Block]:
        return {b: col for (row, b), col in self.nodes[node].items() if row == a}

    def submatrix(self, node: int, u: int) -> galois.FieldArray:
        """Top-left (u*r) x u dense corner of A_node."""
        if not 1 <= u <= self.params.ell:
            raise InvalidParametersError(f"u={u} must lie in [1, {self.params.ell}]")
        r = self.params.r
        out = np.zeros((u * r, u), dtype=np.int64)
        for (a, b), col in self.nodes[node].items():
            if a < u and b < u:
                out[a * r : (a + 1) * r, b] = col.view(np.ndarray)
        return self.field(out)

    def dense(self, node: int) -> galois.FieldArray:
        """Full (r*ell) x ell matrix of A_node."""
        return self.submatrix(node, self.params.ell)

    @cached_property
    def parity_check(self) -> galois.FieldArray:
        """The (r*ell) x (n*ell) matrix H; row a*r+t, column i*ell+b."""
        params = self.params
        r, ell = params.r, params.ell
        out = np.zeros((r * ell, params.n * ell), dtype=np.int64)
        for node, blocks in enumerate(self.nodes):
            for (a, b), col in blocks.items():
                out[a * r : (a + 1) * r, node * ell + b] = col.view(np.ndarray)
        return self.field(out)

    def parity_check_matrix(self) -> galois.FieldArray:
        return self.parity_check


@lru_cache(maxsize=64)
def build_parity_blocks(params: CodeParams) -> ParityBlocks:
    """Build the sparse A_i(a, b) structure of every node."""
    r, ell = params.r, params.ell
    nodes: list[BlockMap] = []
    for group in range(params.groups):
        cols = [column_L(params.lam(6 * group + t), r) for t in range(6)]
        bit = 1 << group
        first: BlockMap = {}
        second: BlockMap = {}
        third: BlockMap = {}
        for a in range(ell):
            ai = digit(a, group)
            first[(a, a)] = cols[ai]
            second[(a, a)] = cols[2 + ai]
            third[(a, a)] = cols[4 + ai]
            if ai == 0:
                first[(a, a | bit)] = cols[0] - cols[1]
            else:
                second[(a, a & ~bit)] = cols[3] - cols[2]
        nodes.extend([first, second, third])
    log.debug("Built parity blocks for n=%d k=%d ell=%d", params.n, params.k, ell)
    return ParityBlocks(params, tuple(nodes))


def submatrix_A(params: CodeParams, node: int, u: int) -> galois.FieldArray:
    return build_parity_blocks(params).submatrix(node, u)
