"""Tests for the numeric oracles, sweeps and benchmark."""

import numpy as np
import pytest

from msr.construct import CodeParams, column_L
from msr.exceptions import Case1OnlyError, InstanceTooLargeError, InvalidParametersError
from msr.linalg import determinant, is_invertible
from msr.models import weighted_size
from msr.verify import (
    bench,
    build_filter_F,
    build_M,
    build_pair_filter,
    build_pair_Q,
    build_Q,
    enumerate_type_vectors,
    expected_filtered_blocks,
    filter_polynomials,
    sweep_all,
    sweep_mds,
    sweep_repair,
    sweep_types,
)


def test_enumerate_type_vectors_small():
    """Test the single-group code with r=2 has three type vectors."""
    found = enumerate_type_vectors(2, 1)
    assert sorted(found) == [
        (0, 0, 0, 1, 0, 0, 0),
        (0, 0, 1, 0, 0, 0, 0),
        (0, 1, 0, 0, 0, 0, 0),
    ]


def test_enumerate_type_vectors_constraints():
    """Test every vector has weighted size r and fits in the groups."""
    found = enumerate_type_vectors(6, 3)
    assert (2, 0, 0, 0, 0, 0, 0) in found
    assert (0, 0, 0, 0, 2, 2, 2) not in found
    assert len(found) == len(set(found))
    for z in found:
        assert weighted_size(z) == 6
        assert sum(z) <= 3


def test_build_M_shape():
    """Test M for z=(2,0,...,0) with r=6 is 24 x 24."""
    params = CodeParams.create(9, 3)
    m = build_M(params, (2, 0, 0, 0, 0, 0, 0))
    assert m.shape == (24, 24)
    assert int(determinant(m)) != 0


def test_build_M_rejects_wrong_size():
    """Test a type vector that does not erase r nodes is refused."""
    params = CodeParams.create(9, 3)
    with pytest.raises(InvalidParametersError):
        build_M(params, (1, 0, 0, 0, 0, 0, 0))


@pytest.mark.parametrize("n", [3, 6, 9, 12])
def test_every_type_vector_is_invertible(n):
    """Test det(M_z) != 0 for every admissible k and type vector."""
    for k in range(1, n - 1):
        params = CodeParams.create(n, k)
        report = sweep_types(params)
        assert report.total("type") == len(enumerate_type_vectors(params.r, params.groups))
        assert report.ok


def test_filter_polynomial_degrees():
    """Test every f_a has degree 2 z1."""
    params = CodeParams.create(9, 3)
    polys = filter_polynomials(params, 2)
    assert len(polys) == 4
    assert all(f.degree == 4 for f in polys)


@pytest.mark.parametrize("n,k,z1", [(6, 3, 1), (9, 3, 2), (12, 3, 3)])
def test_filter_cancels_to_Q(n, k, z1):
    """Test F M matches the analytic blocks and Q is invertible."""
    params = CodeParams.create(n, k)
    z = (z1, 0, 0, 0, 0, 0, 0)
    product = build_filter_F(params, z1) @ build_M(params, z)
    expected = np.hstack([block.view(np.ndarray) for block in expected_filtered_blocks(params, z1)])
    assert np.array_equal(product.view(np.ndarray), expected)

    q = build_Q(params, z1)
    side = z1 * (1 << z1)
    assert q.shape == (side, side)
    assert int(determinant(q)) != 0


def test_filter_requires_case_one():
    """Test the filter refuses r != 3 z1."""
    params = CodeParams.create(9, 4)
    with pytest.raises(Case1OnlyError):
        build_filter_F(params, 1)
    with pytest.raises(Case1OnlyError):
        build_Q(params, 2)


def test_pair_filter_cancels_last_group_columns():
    """Test F kills I (x) L_{6z-6} and I (x) L_{6z-3}."""
    params = CodeParams.create(9, 4)
    f = build_pair_filter(params, 2)
    assert f.shape == (2 * 3, 2 * 5)
    eye = np.eye(2, dtype=np.int64)
    for index in (6, 9):
        col = column_L(params.lam(index), params.r).view(np.ndarray).reshape(-1, 1)
        assert not np.any(f @ params.field(np.kron(eye, col)))


def test_pair_Q_is_row_summed_M():
    """Test summing the paired block rows of M equals Q applied to the paired sums."""
    params = CodeParams.create(9, 4)
    z = (1, 1, 0, 0, 0, 0, 0)
    m = build_M(params, z)
    q = build_pair_Q(params, z)
    assert q.shape == (10, 10)
    assert is_invertible(q)

    r, erased = params.r, 5
    eye = np.eye(2, dtype=np.int64)
    row_sum = np.kron(np.hstack([eye, eye]), np.eye(r, dtype=np.int64))
    col_sum = np.kron(np.eye(erased, dtype=np.int64), np.hstack([eye, eye]))
    gf = params.field
    assert np.array_equal(gf(row_sum) @ m, q @ gf(col_sum))

    filtered = build_pair_filter(params, 2) @ q
    assert not np.any(filtered[:, 6:])


def test_pair_Q_rejects_other_types():
    """Test the pair system needs (z1, z2 >= 1, 0, ...)."""
    params = CodeParams.create(9, 4)
    with pytest.raises(InvalidParametersError):
        build_pair_Q(params, (0, 0, 1, 0, 0, 1, 1))


def test_sweeps_refuse_large_instances():
    """Test exhaustive sweeps are limited by max_n."""
    params = CodeParams.create(15, 5)
    with pytest.raises(InstanceTooLargeError):
        sweep_mds(params)
    with pytest.raises(InstanceTooLargeError):
        sweep_types(params, max_n=12)
    with pytest.raises(InstanceTooLargeError):
        sweep_repair(CodeParams.create(9, 5), max_n=6)


def test_sweep_mds_report():
    """Test the MDS sweep covers all r-subsets."""
    report = sweep_mds(CodeParams.create(6, 4))
    assert report.total("mds") == 15
    assert report.passed("mds") == 15
    assert report.records[0].to_line() == "mds 0,1 pass -"


def test_sweep_repair_report():
    """Test the repair sweep records bandwidth per helper set."""
    report = sweep_repair(CodeParams.create(6, 3))
    assert report.total("repair") == 6 * 5
    assert report.ok
    assert report.records[0].to_line() == "repair 0:1,2,3,4 pass 8"


def test_sweep_all_summary():
    """Test the combined report of the (9, 5) code."""
    report = sweep_all(CodeParams.create(9, 5), seed=1)
    assert report.ok
    assert report.summary().startswith("mds 126/126 pass, repair 252/252 pass")
    assert report.summary(("mds", "repair")) == "mds 126/126 pass, repair 252/252 pass"
    assert report.summary(("type",)).startswith("type ")
    lines = report.to_lines()
    assert len(lines) == len(report.records)
    assert any(line.startswith("type (") for line in lines)


def test_bench():
    """Test the benchmark reports optimal repair traffic."""
    result = bench(CodeParams.create(9, 5), trials=5)
    assert result.repair_symbols == 24
    assert result.naive_symbols == 40
    assert str(result.ratio) == "3/5"
    assert result.encode_seconds >= 0

    result = bench(CodeParams.create(6, 2), trials=3)
    assert str(result.ratio) == "3/4"


def test_bench_rejects_zero_trials():
    """Test at least one trial is required."""
    with pytest.raises(InvalidParametersError):
        bench(CodeParams.create(6, 2), trials=0)
