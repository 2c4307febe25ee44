"""Single-node repair from d = k+1 helpers, each sending ell/2 symbols.

For a failed node of group i the parity rows are reduced to ell/2 block
rows (role 0 keeps rows with digit i = 0, role 1 keeps digit i = 1, role 2
sums the row pairs a, a + 2^i). Every other node then enters only through
ell/2 combinations of its symbols, and the failed node through a pair of
virtual nodes (tilde, hat). The reduced rows define an (n+1, k+1) MDS array
code of subpacketization ell/2, which is decoded with the pair and the
r-2 unaccessed helpers erased.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from functools import lru_cache

import galois
import numpy as np

from .codec import group_swap_params, group_swap_word
from .construct import CodeParams, ParityBlocks, build_parity_blocks, insert_digit
from .exceptions import (
    DecodeError,
    InvalidParametersError,
    PlanMismatchError,
    WrongHelperCountError,
)
from .linalg import NoUniqueSolution, Singular, invert, left_inverse
from .models.erasure import GroupSwap
from .models.repair import HelperRequest, RepairPlan, RepairTranscript

log = logging.getLogger(__name__)


def cut_set_bound(params: CodeParams) -> int:
    """d*ell/(d-k+1), which is (k+1)*ell/2 for d = k+1."""
    d = params.d
    return d * params.ell // (d - params.k + 1)


def plan_repair(params: CodeParams, failed: int) -> RepairPlan:
    """What every helper transmits when ``failed`` is lost."""
    if not 0 <= failed < params.n:
        raise InvalidParametersError(f"Failed node {failed} is outside [0, {params.n})")
    group, role = divmod(failed, 3)
    pairs = []
    for reduced in range(params.ell // 2):
        b0 = insert_digit(reduced, group, 0)
        b1 = insert_digit(reduced, group, 1)
        if role == 0:
            pairs.append((b0, b0))
        elif role == 1:
            pairs.append((b1, b1))
        else:
            pairs.append((b0, b1))
    request = HelperRequest(pairs=tuple(pairs), summed=role == 2)
    return RepairPlan(failed=failed, group=group, role=role, request=request)


def helper_response(plan: RepairPlan, column: galois.FieldArray) -> galois.FieldArray:
    """Reduce a helper's full column (..., ell) to the ell/2 symbols it sends."""
    first = [pair[0] for pair in plan.request.pairs]
    if not plan.request.summed:
        return column[..., first]
    second = [pair[1] for pair in plan.request.pairs]
    return column[..., first] + column[..., second]


def _fold_rows(plan: RepairPlan, ell: int) -> tuple[np.ndarray, np.ndarray]:
    """0/1 matrices with tilde = Tt @ C and hat = Th @ C for the failed column."""
    half = ell // 2
    tilde = np.zeros((half, ell), dtype=np.int64)
    hat = np.zeros((half, ell), dtype=np.int64)
    for reduced in range(half):
        b0 = insert_digit(reduced, plan.group, 0)
        b1 = insert_digit(reduced, plan.group, 1)
        if plan.role == 0:
            tilde[reduced, [b0, b1]] = 1
            hat[reduced, b1] = 1
        elif plan.role == 1:
            tilde[reduced, b0] = 1
            hat[reduced, [b0, b1]] = 1
        else:
            tilde[reduced, b0] = 1
            hat[reduced, b1] = 1
    return tilde, hat


def _fold_matrix(plan: RepairPlan, params: CodeParams) -> galois.FieldArray:
    tilde, hat = _fold_rows(plan, params.ell)
    return params.field(np.vstack([tilde, hat]))


def fold_failed(
    plan: RepairPlan, params: CodeParams, column: galois.FieldArray
) -> tuple[galois.FieldArray, galois.FieldArray]:
    """The virtual pair (tilde, hat) of the failed node's column."""
    half = params.ell // 2
    folded = column @ _fold_matrix(plan, params).T
    return folded[..., :half], folded[..., half:]


def unfold_failed(
    plan: RepairPlan,
    params: CodeParams,
    tilde: galois.FieldArray,
    hat: galois.FieldArray,
) -> galois.FieldArray:
    """Rebuild the failed column from its virtual pair."""
    column = params.field.Zeros((*tilde.shape[:-1], params.ell))
    for reduced, (b0, b1) in enumerate(_pair_coordinates(plan, params.ell)):
        t, h = tilde[..., reduced], hat[..., reduced]
        if plan.role == 0:
            column[..., b1] = h
            column[..., b0] = t - h
        elif plan.role == 1:
            column[..., b0] = t
            column[..., b1] = h - t
        else:
            column[..., b0] = t
            column[..., b1] = h
    return column


def _pair_coordinates(plan: RepairPlan, ell: int) -> list[tuple[int, int]]:
    return [
        (insert_digit(reduced, plan.group, 0), insert_digit(reduced, plan.group, 1))
        for reduced in range(ell // 2)
    ]


class ReducedSystem:
    """The ell/2 reduced block rows for one failed node.

    ``tilde`` and ``hat`` are the (r*ell/2) x (ell/2) blocks of the virtual
    pair; ``folded[j]`` is the block of every other node j, acting on the
    ell/2 symbols node j transmits.
    """

    def __init__(
        self,
        plan: RepairPlan,
        params: CodeParams,
        tilde: galois.FieldArray,
        hat: galois.FieldArray,
        folded: dict[int, galois.FieldArray],
    ):
        self.plan = plan
        self.params = params
        self.tilde = tilde
        self.hat = hat
        self.folded = folded

    @property
    def columns(self) -> list[int]:
        """Node order of the folded columns (ascending, failed node omitted)."""
        return sorted(self.folded)

    def matrix(self) -> galois.FieldArray:
        """[tilde | hat | folded columns ascending], (r*ell/2) x ((n+1)*ell/2)."""
        parts = [self.tilde, self.hat] + [self.folded[j] for j in self.columns]
        return self.params.field(np.hstack([part.view(np.ndarray) for part in parts]))


def _row_reducer(plan: RepairPlan, params: CodeParams) -> galois.FieldArray:
    """Selects (roles 0, 1) or sums (role 2) the block rows kept for repair."""
    r, ell = params.r, params.ell
    keep = np.zeros((ell // 2, ell), dtype=np.int64)
    for reduced, (b0, b1) in enumerate(_pair_coordinates(plan, ell)):
        if plan.role != 1:
            keep[reduced, b0] = 1
        if plan.role != 0:
            keep[reduced, b1] = 1
    return params.field(np.kron(keep, np.eye(r, dtype=np.int64)))


def build_reduced_system(
    params: CodeParams, blocks: ParityBlocks, failed: int
) -> ReducedSystem:
    plan = plan_repair(params, failed)
    half = params.ell // 2
    reducer = _row_reducer(plan, params)
    sent = [pair[0] for pair in plan.request.pairs]
    request = params.field.Zeros((half, params.ell))
    for reduced, (first, second) in enumerate(plan.request.pairs):
        request[reduced, first] = 1
        request[reduced, second] = 1

    folded: dict[int, galois.FieldArray] = {}
    for node in range(params.n):
        if node == failed:
            continue
        rows = reducer @ blocks.dense(node)
        block = rows[:, sent]
        if not np.array_equal(block @ request, rows):
            raise DecodeError(f"Node {node} does not fold onto the repair request of node {failed}")
        folded[node] = block

    unfold = invert(_fold_matrix(plan, params))
    if isinstance(unfold, Singular):
        raise DecodeError(f"Fold of node {failed} is not invertible")
    pair = reducer @ blocks.dense(failed) @ unfold
    log.debug("Reduced system for node %d: role %d, %d block rows", failed, plan.role, half)
    return ReducedSystem(plan, params, pair[:, :half], pair[:, half:], folded)


@lru_cache(maxsize=64)
def reduced_system_for(blocks: ParityBlocks, failed: int) -> ReducedSystem:
    return build_reduced_system(blocks.params, blocks, failed)


class Repairer:
    """Precomputed map from the helpers' transmissions to the failed column."""

    def __init__(self, blocks: ParityBlocks, failed: int, helpers: Iterable[int]):
        params = blocks.params
        self.params = params
        self.helpers = check_helpers(params, failed, helpers)
        self.failed = failed
        self.system = reduced_system_for(blocks, failed)
        self.plan = self.system.plan
        self.unaccessed = tuple(
            j for j in range(params.n) if j != failed and j not in self.helpers
        )
        half = params.ell // 2
        field = params.field

        def stack(parts: list[galois.FieldArray]) -> galois.FieldArray:
            return field(np.hstack([part.view(np.ndarray) for part in parts]))

        unknown = stack(
            [self.system.tilde, self.system.hat]
            + [self.system.folded[j] for j in self.unaccessed]
        )
        found = left_inverse(unknown)
        if isinstance(found, NoUniqueSolution):
            raise DecodeError(
                f"Reduced system for node {failed} with helpers {list(self.helpers)} is singular"
            )
        left, _ = found
        known = stack([self.system.folded[j] for j in self.helpers])
        pair_map = -(left[: 2 * half] @ known)
        unfold = invert(_fold_matrix(self.plan, params))
        assert not isinstance(unfold, Singular)
        self._recover = unfold @ pair_map
        log.debug(
            "Prepared repair of node %d from helpers %s", failed, list(self.helpers)
        )

    def repair(self, helper_data: Mapping[int, galois.FieldArray]) -> galois.FieldArray:
        """Recover the failed column (..., ell) from each helper's (..., ell/2) symbols."""
        half = self.params.ell // 2
        if set(helper_data) != set(self.helpers):
            raise PlanMismatchError(
                f"Expected data from helpers {list(self.helpers)}, got {sorted(helper_data)}"
            )
        parts = []
        for j in self.helpers:
            sent = helper_data[j]
            if sent.shape[-1] != half:
                raise PlanMismatchError(
                    f"Helper {j} sent {sent.shape[-1]} symbols per stripe, the plan asks for {half}"
                )
            parts.append(sent)
        received = np.concatenate([part.view(np.ndarray) for part in parts], axis=-1)
        flat = self.params.field(received.reshape(-1, received.shape[-1]))
        recovered = flat @ self._recover.T
        return recovered.reshape(*received.shape[:-1], self.params.ell)


def check_helpers(params: CodeParams, failed: int, helpers: Iterable[int]) -> tuple[int, ...]:
    if not 0 <= failed < params.n:
        raise InvalidParametersError(f"Failed node {failed} is outside [0, {params.n})")
    chosen = tuple(sorted(set(int(j) for j in helpers)))
    if failed in chosen:
        raise WrongHelperCountError(f"Failed node {failed} cannot help repair itself")
    if any(not 0 <= j < params.n for j in chosen):
        raise WrongHelperCountError(f"Helpers {list(chosen)} must lie in [0, {params.n})")
    if len(chosen) != params.d:
        raise WrongHelperCountError(
            f"Repair needs exactly d=k+1={params.d} distinct helpers, got {len(chosen)}"
        )
    return chosen


@lru_cache(maxsize=256)
def repairer_for(blocks: ParityBlocks, failed: int, helpers: tuple[int, ...]) -> Repairer:
    return Repairer(blocks, failed, helpers)


def repair_node(
    params: CodeParams,
    blocks: ParityBlocks,
    failed: int,
    helpers: Iterable[int],
    helper_data: Mapping[int, galois.FieldArray],
) -> RepairTranscript:
    """Regenerate node ``failed`` from the helpers' planned transmissions.

    Raises:
        WrongHelperCountError: Helper set is not d distinct other nodes
        PlanMismatchError: helper_data does not match the plan
    """
    chosen = check_helpers(params, failed, helpers)
    recovered = repairer_for(blocks, failed, chosen).repair(helper_data)
    stripes = int(np.prod(recovered.shape[:-1], dtype=np.int64))
    per_stripe = sum(int(helper_data[j].shape[-1]) for j in chosen)
    return RepairTranscript(
        failed=failed,
        helpers=chosen,
        stripes=stripes,
        symbols_downloaded=per_stripe * stripes,
        cut_set_bound=cut_set_bound(params),
        recovered=recovered,
    )


def repair_from_codeword(
    params: CodeParams,
    blocks: ParityBlocks,
    cw: galois.FieldArray,
    failed: int,
    helpers: Iterable[int],
) -> RepairTranscript:
    """Run every helper's side of the plan on ``cw`` and repair ``failed``."""
    plan = plan_repair(params, failed)
    chosen = check_helpers(params, failed, helpers)
    data = {j: helper_response(plan, cw[..., j, :]) for j in chosen}
    return repair_node(params, blocks, failed, chosen, data)


def repair_via_swap(
    params: CodeParams,
    cw: galois.FieldArray,
    failed: int,
    helpers: Iterable[int],
) -> galois.FieldArray:
    """Repair a node of group g by moving g to group 0 and back again."""
    chosen = check_helpers(params, failed, helpers)
    group, role = divmod(failed, 3)
    if group == 0:
        return repair_from_codeword(params, build_parity_blocks(params), cw, failed, chosen).recovered
    swap = GroupSwap(i=0, j=group)
    swapped_params = group_swap_params(params, swap)
    swapped = group_swap_word(cw, swap)

    def moved(node: int) -> int:
        g, t = divmod(node, 3)
        if g == group:
            return t
        if g == 0:
            return 3 * group + t
        return node

    transcript = repair_from_codeword(
        swapped_params,
        build_parity_blocks(swapped_params),
        swapped,
        role,
        [moved(j) for j in chosen],
    )
    # Digit exchange is an involution, so the same permutation undoes it.
    restored = group_swap_word(
        _as_node_row(transcript.recovered, params, role), swap
    )
    return restored[..., failed, :]


def _as_node_row(
    column: galois.FieldArray, params: CodeParams, node: int
) -> galois.FieldArray:
    word = params.field.Zeros((*column.shape[:-1], params.n, params.ell))
    word[..., node, :] = column
    return word
