"""Numeric oracles for the MDS argument and exhaustive sweeps.

The block systems M_z of the canonical erasure patterns, the polynomial
filter F that cancels most of M's columns when only whole groups fail, and
the row-pair-summed matrix Q_z used when two-node groups are present are
all built here and checked by determinant over the working field.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Iterator, Sequence
from itertools import combinations

import galois
import numpy as np

from .codec import canonical_pattern, decode_erasures, encode, random_codeword
from .construct import CodeParams, build_parity_blocks, column_L, digit
from .exceptions import Case1OnlyError, InstanceTooLargeError, InvalidParametersError, MSRError
from .linalg import determinant
from .models.erasure import TYPE_WEIGHTS, weighted_size
from .models.report import BenchResult, SweepRecord, SweepReport
from .repair import cut_set_bound, repair_from_codeword

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 12


def enumerate_type_vectors(r: int, groups: int) -> list[tuple[int, ...]]:
    """Every z with 3z1 + 2(z2+z3+z4) + z5+z6+z7 = r using at most ``groups`` groups."""
    found: list[tuple[int, ...]] = []

    def extend(prefix: tuple[int, ...], left: int, used: int) -> Iterator[tuple[int, ...]]:
        t = len(prefix)
        if t == len(TYPE_WEIGHTS):
            if left == 0:
                yield prefix
            return
        weight = TYPE_WEIGHTS[t]
        for count in range(min(left // weight, groups - used) + 1):
            yield from extend(prefix + (count,), left - count * weight, used + count)

    found.extend(extend((), r, 0))
    return found


def _check_type_vector(params: CodeParams, z: Sequence[int]) -> tuple[int, ...]:
    z = tuple(int(c) for c in z)
    if len(z) != 7 or any(c < 0 for c in z):
        raise InvalidParametersError(f"A type vector has seven non-negative entries, got {z}")
    if weighted_size(z) != params.r:
        raise InvalidParametersError(
            f"Type {z} erases {weighted_size(z)} nodes, the oracle needs exactly r={params.r}"
        )
    if sum(z) > params.groups:
        raise InvalidParametersError(f"Type {z} touches more than {params.groups} groups")
    return z


def build_M(params: CodeParams, z: Sequence[int]) -> galois.FieldArray:
    """The 2^z r square matrix [A_i1^(2^z) ... A_ir^(2^z)] over the canonical pattern."""
    z = _check_type_vector(params, z)
    blocks = build_parity_blocks(params)
    u = 1 << sum(z)
    corners = [blocks.submatrix(node, u).view(np.ndarray) for node in sorted(canonical_pattern(z))]
    return params.field(np.hstack(corners))


def _check_case1(params: CodeParams, z1: int) -> None:
    if params.r != 3 * z1:
        raise Case1OnlyError(f"The filter needs r = 3*z1, got r={params.r}, z1={z1}")
    if not 1 <= z1 <= params.groups:
        raise InvalidParametersError(f"z1={z1} must lie in [1, {params.groups}]")


def g_factor(params: CodeParams, a: int, group: int) -> galois.Poly:
    """(x - l_6i)(x - l_6i+4) when digit i of a is 0, else (x - l_6i+3)(x - l_6i+5)."""
    base = 6 * group
    picks = (0, 4) if digit(a, group) == 0 else (3, 5)
    roots = params.field([params.lambdas[base + t] for t in picks])
    return galois.Poly.Roots(roots, field=params.field)


def filter_polynomials(params: CodeParams, z1: int) -> list[galois.Poly]:
    """f_a for a in [0, 2^z1): the product of g_{a,i} over the first z1 groups."""
    polys = []
    for a in range(1 << z1):
        f = galois.Poly.One(field=params.field)
        for group in range(z1):
            f = f * g_factor(params, a, group)
        polys.append(f)
    return polys


def _window_matrix(params: CodeParams, poly: galois.Poly, rows: int) -> np.ndarray:
    """Row t carries the ascending coefficients of ``poly`` at columns t..t+deg."""
    coeffs = poly.coefficients(poly.degree + 1, order="asc").view(np.ndarray)
    out = np.zeros((rows, params.r), dtype=np.int64)
    for t in range(rows):
        out[t, t : t + len(coeffs)] = coeffs
    return out


def build_filter_F(params: CodeParams, z1: int) -> galois.FieldArray:
    """Block-diagonal filter with one z1 x r block F_a per block row a."""
    _check_case1(params, z1)
    u = 1 << z1
    out = np.zeros((u * z1, u * params.r), dtype=np.int64)
    for a, f in enumerate(filter_polynomials(params, z1)):
        out[a * z1 : (a + 1) * z1, a * params.r : (a + 1) * params.r] = _window_matrix(params, f, z1)
    return params.field(out)


def _filtered_columns(z1: int) -> list[int]:
    """Columns of F M that survive the filter.

    Node 3i keeps coordinates with digit i = 1, node 3i+1 those with digit
    i = 0; node 3i+2 is cancelled entirely.
    """
    u = 1 << z1
    cols = []
    for group in range(z1):
        for role, keep in ((0, 1), (1, 0)):
            position = 3 * group + role
            cols.extend(position * u + b for b in range(u) if digit(b, group) == keep)
    return cols


def build_Q(params: CodeParams, z1: int) -> galois.FieldArray:
    """The z1 2^z1 square matrix of nonzero columns of F M for z = (z1, 0, ..., 0)."""
    _check_case1(params, z1)
    z = (z1, 0, 0, 0, 0, 0, 0)
    product = build_filter_F(params, z1) @ build_M(params, z)
    return product[:, _filtered_columns(z1)]


def expected_filtered_blocks(params: CodeParams, z1: int) -> list[galois.FieldArray]:
    """Analytic F A_i^(2^z1) for the 3 z1 failed nodes, in node order.

    With L' the length-z1 Vandermonde column, node 3i has f_a(l_6i+1) L' on
    the diagonal where a_i = 1 and -f_a(l_6i+1) L' at (a, a + 2^i) where
    a_i = 0; node 3i+1 mirrors this with l_6i+2 and the digit roles swapped;
    node 3i+2 is zero.
    """
    _check_case1(params, z1)
    gf = params.field
    u = 1 << z1
    polys = filter_polynomials(params, z1)
    out = []
    for group in range(z1):
        bit = 1 << group
        for role in range(3):
            block = gf.Zeros((u * z1, u))
            if role < 2:
                lam = params.lam(6 * group + 1 + role)
                lprime = column_L(lam, z1)
                for a in range(u):
                    value = polys[a](lam)
                    rows = slice(a * z1, (a + 1) * z1)
                    if digit(a, group) == 1 - role:
                        block[rows, a] = value * lprime
                    else:
                        block[rows, a ^ bit] = -value * lprime
            out.append(block)
    return out


def build_pair_filter(params: CodeParams, z: int) -> galois.FieldArray:
    """kron(I_{2^(z-1)}, F_0) for f(x) = (x - l_{6z-6})(x - l_{6z-3}).

    F_0 is (r-2) x r with row t holding f's coefficients at columns t..t+2.
    """
    if not 1 <= z <= params.groups:
        raise InvalidParametersError(f"z={z} must lie in [1, {params.groups}]")
    if params.r < 3:
        raise InvalidParametersError(f"The pair filter needs r >= 3, got r={params.r}")
    gf = params.field
    roots = gf([params.lambdas[6 * z - 6], params.lambdas[6 * z - 3]])
    f = galois.Poly.Roots(roots, field=gf)
    f0 = _window_matrix(params, f, params.r - 2)
    return gf(np.kron(np.eye(1 << (z - 1), dtype=np.int64), f0))


def build_pair_Q(params: CodeParams, z: Sequence[int]) -> galois.FieldArray:
    """Row-pair-summed system for z = (z1, z2, 0, ..., 0) with z2 >= 1.

    Q = [A_i1^(h) ... A_i(r-2)^(h) | I (x) L_{6z-6} | I (x) L_{6z-3}], h = 2^(z-1),
    where i1..i(r-2) are the canonical erased nodes outside the last group.
    """
    z = _check_type_vector(params, z)
    if z[1] < 1 or any(z[2:]):
        raise InvalidParametersError(f"Type {z} is not of the form (z1, z2>=1, 0, ..., 0)")
    total = sum(z)
    half = 1 << (total - 1)
    blocks = build_parity_blocks(params)
    earlier = [node for node in sorted(canonical_pattern(z)) if node // 3 < total - 1]
    eye = np.eye(half, dtype=np.int64)
    parts = [blocks.submatrix(node, half).view(np.ndarray) for node in earlier]
    for index in (6 * total - 6, 6 * total - 3):
        lcol = column_L(params.lam(index), params.r).view(np.ndarray).reshape(-1, 1)
        parts.append(np.kron(eye, lcol))
    return params.field(np.hstack(parts))


def _guard(params: CodeParams, max_n: int) -> None:
    if params.n > max_n:
        raise InstanceTooLargeError(
            f"Exhaustive sweeps are limited to n <= {max_n}, got n={params.n}"
        )


def _pattern(nodes: Sequence[int]) -> str:
    return ",".join(str(node) for node in nodes) or "-"


def sweep_mds(
    params: CodeParams, seed: int = 0, max_n: int = DEFAULT_MAX_N
) -> SweepReport:
    """Decode every r-subset of erasures from a random codeword with both methods."""
    _guard(params, max_n)
    blocks = build_parity_blocks(params)
    original = random_codeword(params, blocks, seed)
    report = SweepReport(n=params.n, k=params.k, p=params.p)
    for erased in combinations(range(params.n), params.r):
        damaged = original.copy()
        damaged[list(erased), :] = 0
        try:
            structured = decode_erasures(params, blocks, damaged, erased, "structured")
            generic = decode_erasures(params, blocks, damaged, erased, "generic")
            passed = np.array_equal(structured, original) and np.array_equal(generic, original)
        except MSRError as e:
            log.warning("Decoding %s failed: %s", erased, e)
            passed = False
        report.records.append(SweepRecord(kind="mds", pattern=_pattern(erased), passed=passed))
    log.info("MDS sweep n=%d k=%d: %s", params.n, params.k, report.summary())
    return report


def sweep_repair(
    params: CodeParams, seed: int = 0, max_n: int = DEFAULT_MAX_N
) -> SweepReport:
    """Repair every node from every helper set of size d."""
    _guard(params, max_n)
    blocks = build_parity_blocks(params)
    original = random_codeword(params, blocks, seed)
    bound = cut_set_bound(params)
    report = SweepReport(n=params.n, k=params.k, p=params.p)
    for failed in range(params.n):
        others = [j for j in range(params.n) if j != failed]
        for helpers in combinations(others, params.d):
            pattern = f"{failed}:{_pattern(helpers)}"
            try:
                transcript = repair_from_codeword(params, blocks, original, failed, helpers)
                passed = (
                    np.array_equal(transcript.recovered, original[failed])
                    and transcript.symbols_downloaded == bound
                )
                bandwidth: int | None = transcript.symbols_downloaded
            except MSRError as e:
                log.warning("Repair %s failed: %s", pattern, e)
                passed, bandwidth = False, None
            report.records.append(
                SweepRecord(kind="repair", pattern=pattern, passed=passed, bandwidth=bandwidth)
            )
    log.info("Repair sweep n=%d k=%d: %s", params.n, params.k, report.summary())
    return report


def sweep_types(params: CodeParams, max_n: int = DEFAULT_MAX_N) -> SweepReport:
    """det(M_z) != 0 for every type vector with weighted size r."""
    _guard(params, max_n)
    report = SweepReport(n=params.n, k=params.k, p=params.p)
    for z in enumerate_type_vectors(params.r, params.groups):
        passed = int(determinant(build_M(params, z))) != 0
        if not passed:
            log.warning("M is singular for type %s", z)
        pattern = "(" + ",".join(str(c) for c in z) + ")"
        report.records.append(SweepRecord(kind="type", pattern=pattern, passed=passed))
    return report


def sweep_all(params: CodeParams, seed: int = 0, max_n: int = DEFAULT_MAX_N) -> SweepReport:
    report = SweepReport(n=params.n, k=params.k, p=params.p)
    for part in (
        sweep_mds(params, seed, max_n),
        sweep_repair(params, seed, max_n),
        sweep_types(params, max_n),
    ):
        report.records.extend(part.records)
    return report


def bench(params: CodeParams, trials: int = 100, seed: int = 0) -> BenchResult:
    """Time encode, decode of the first r nodes and repair of node 0 on ``trials`` stripes."""
    if trials < 1:
        raise InvalidParametersError(f"trials must be >= 1, got {trials}")
    blocks = build_parity_blocks(params)
    rng = np.random.default_rng(seed)
    data = params.field.Random((trials, params.k, params.ell), seed=rng)
    erased = tuple(range(params.r))
    helpers = tuple(range(1, params.d + 1))

    # Warm the decoder and repairer caches so only the per-stripe work is timed.
    word = random_codeword(params, blocks, rng)
    decode_erasures(params, blocks, word, erased)
    repair_from_codeword(params, blocks, word, 0, helpers)

    start = time.perf_counter()
    words = encode(params, blocks, data)
    encode_seconds = time.perf_counter() - start

    damaged = words.copy()
    damaged[:, list(erased), :] = 0
    start = time.perf_counter()
    decode_erasures(params, blocks, damaged, erased)
    decode_seconds = time.perf_counter() - start

    start = time.perf_counter()
    transcript = repair_from_codeword(params, blocks, words, 0, helpers)
    repair_seconds = time.perf_counter() - start

    return BenchResult(
        n=params.n,
        k=params.k,
        p=params.p,
        ell=params.ell,
        trials=trials,
        encode_seconds=encode_seconds / trials,
        decode_seconds=decode_seconds / trials,
        repair_seconds=repair_seconds / trials,
        repair_symbols=transcript.symbols_per_stripe,
        naive_symbols=params.k * params.ell,
        cut_set_bound=cut_set_bound(params),
    )
