"""Tests for the msr command line."""

import json
import os

import pytest
from click.testing import CliRunner

from msr.models import MANIFEST_NAME, chunk_name
from msr_cli.app import cli


@pytest.fixture
def runner():
    """Create a CLI test runner."""
    return CliRunner()


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch, tmp_path):
    """Keep the real config file and MSR_* variables out of the tests."""
    monkeypatch.setenv("HOME", str(tmp_path / "home"))
    for name in ("MSR_MODULUS", "MSR_OUTPUT_FORMAT", "MSR_MAX_SWEEP_N", "MSR_SEED", "MSR_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def encoded(runner, tmp_path):
    """A 3000-byte file encoded with the (9, 5) code."""
    payload = os.urandom(3000)
    source = tmp_path / "data.bin"
    source.write_bytes(payload)
    out = tmp_path / "chunks"
    result = runner.invoke(cli, ["encode", str(source), "--n", "9", "--k", "5", "--out", str(out)])
    assert result.exit_code == 0, result.output
    return payload, out


def test_version(runner):
    """Test --version."""
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "msr" in result.output


def test_params_table(runner):
    """Test the parameter table of the (9, 5) code."""
    result = runner.invoke(cli, ["params", "--n", "9", "--k", "5"])
    assert result.exit_code == 0
    assert "Code Parameters" in result.output
    assert "257" in result.output


def test_params_json(runner):
    """Test the parameter JSON of the (9, 5) code."""
    result = runner.invoke(cli, ["params", "--n", "9", "--k", "5", "--output", "json"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["r"] == 4
    assert data["d"] == 6
    assert data["ell"] == 8
    assert data["p"] == 257
    assert len(data["lambdas"]) == 18
    assert data["repair_symbols"] == 24
    assert data["cut_set_bound"] == 24


def test_params_explicit_modulus(runner):
    """Test an explicit prime modulus is accepted."""
    result = runner.invoke(cli, ["params", "--n", "3", "--k", "1", "--p", "263", "-o", "json"])
    assert result.exit_code == 0
    assert json.loads(result.output)["p"] == 263


def test_params_rejects_bad_length(runner):
    """Test n must be a multiple of 3."""
    result = runner.invoke(cli, ["params", "--n", "10", "--k", "5"])
    assert result.exit_code != 0
    assert "multiple of 3" in result.output


def test_params_rejects_small_field(runner):
    """Test a field that cannot hold a byte per symbol is refused."""
    result = runner.invoke(cli, ["params", "--n", "9", "--k", "5", "--p", "19"])
    assert result.exit_code != 0
    assert "257" in result.output


def test_params_rejects_composite_modulus(runner):
    """Test a composite modulus is refused."""
    result = runner.invoke(cli, ["params", "--n", "9", "--k", "5", "--p", "260"])
    assert result.exit_code != 0
    assert "not prime" in result.output


def test_params_writes_manifest_template(runner, tmp_path):
    """Test --out saves a manifest for the instance."""
    target = tmp_path / "template.toml"
    result = runner.invoke(cli, ["params", "--n", "6", "--k", "4", "--out", str(target)])
    assert result.exit_code == 0
    assert "lambdas" in target.read_text()


def test_encode_writes_chunks(runner, encoded):
    """Test encode writes n chunks and a manifest."""
    _, out = encoded
    assert (out / MANIFEST_NAME).exists()
    assert sorted(p.name for p in out.glob("*.chunk")) == [chunk_name(i) for i in range(9)]


def test_decode_after_losing_r_chunks(runner, encoded, tmp_path):
    """Test decode restores the file with four chunks deleted."""
    payload, out = encoded
    for node in (0, 3, 5, 8):
        (out / chunk_name(node)).unlink()
    restored = tmp_path / "restored.bin"
    result = runner.invoke(cli, ["decode", str(out), "--out", str(restored)])
    assert result.exit_code == 0, result.output
    assert "0, 3, 5, 8" in result.output
    assert "Restored 3000 bytes" in result.output
    assert restored.read_bytes() == payload


def test_decode_fails_with_too_few_chunks(runner, encoded, tmp_path):
    """Test decode aborts when more than r chunks are gone."""
    _, out = encoded
    for node in range(5):
        (out / chunk_name(node)).unlink()
    result = runner.invoke(cli, ["decode", str(out), "--out", str(tmp_path / "restored.bin")])
    assert result.exit_code != 0
    assert "at least k=5" in result.output


def test_repair_regenerates_chunk(runner, encoded):
    """Test repair writes back a byte-identical chunk at the cut-set bound."""
    _, out = encoded
    lost = out / chunk_name(0)
    original = lost.read_bytes()
    lost.unlink()
    result = runner.invoke(cli, ["repair", str(out), "--failed", "0", "--helpers", "1,2,3,4,5,6"])
    assert result.exit_code == 0, result.output
    assert "optimal: yes" in result.output
    assert lost.read_bytes() == original


def test_repair_json(runner, encoded, tmp_path):
    """Test the repair transcript as JSON."""
    _, out = encoded
    target = tmp_path / "node8.chunk"
    result = runner.invoke(
        cli,
        ["repair", str(out), "--failed", "8", "--helpers", "0,1,2,3,4,5", "--out", str(target), "-o", "json"],
    )
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    assert data["symbols_per_stripe"] == 24
    assert data["cut_set_bound"] == 24
    assert data["optimal"] is True
    assert target.read_bytes() == (out / chunk_name(8)).read_bytes()


def test_repair_rejects_failed_node_as_helper(runner, encoded):
    """Test the failed node cannot help."""
    _, out = encoded
    result = runner.invoke(cli, ["repair", str(out), "--failed", "0", "--helpers", "0,1,2,3,4,5"])
    assert result.exit_code != 0
    assert "cannot help" in result.output


def test_repair_rejects_wrong_helper_count(runner, encoded):
    """Test exactly k+1 helpers are required."""
    _, out = encoded
    result = runner.invoke(cli, ["repair", str(out), "--failed", "0", "--helpers", "1,2,3,4,5"])
    assert result.exit_code != 0
    assert "d=k+1=6" in result.output


def test_repair_rejects_malformed_helpers(runner, encoded):
    """Test the helper list must be integers."""
    _, out = encoded
    result = runner.invoke(cli, ["repair", str(out), "--failed", "0", "--helpers", "1,two,3"])
    assert result.exit_code == 2
    assert "comma-separated" in result.output


def test_one_mebibyte_round_trip(runner, tmp_path):
    """Test a 1 MiB file survives r deletions and one chunk repair."""
    payload = os.urandom(1 << 20)
    source = tmp_path / "big.bin"
    source.write_bytes(payload)
    out = tmp_path / "chunks"
    result = runner.invoke(cli, ["encode", str(source), "--n", "9", "--k", "5", "--out", str(out)])
    assert result.exit_code == 0, result.output
    originals = {node: (out / chunk_name(node)).read_bytes() for node in (1, 2, 6, 7)}

    for node in originals:
        (out / chunk_name(node)).unlink()
    restored = tmp_path / "restored.bin"
    result = runner.invoke(cli, ["decode", str(out), "--out", str(restored)])
    assert result.exit_code == 0, result.output
    assert restored.read_bytes() == payload

    (out / chunk_name(1)).write_bytes(originals[1])
    (out / chunk_name(6)).write_bytes(originals[6])
    (out / chunk_name(7)).write_bytes(originals[7])
    result = runner.invoke(cli, ["repair", str(out), "--failed", "2", "--helpers", "0,1,3,4,5,6"])
    assert result.exit_code == 0, result.output
    assert (out / chunk_name(2)).read_bytes() == originals[2]


def test_verify_small_instance(runner, tmp_path):
    """Test verify of the (6, 4) code and its report file."""
    report = tmp_path / "sweep.txt"
    result = runner.invoke(cli, ["verify", "--n", "6", "--k", "4", "--report", str(report)])
    assert result.exit_code == 0, result.output
    assert "mds 15/15 pass" in result.output
    lines = report.read_text().splitlines()
    assert lines[0] == "mds 0,1 pass -"
    assert sum(1 for line in lines if line.startswith("repair ")) == 6


def test_verify_nine_five(runner):
    """Test the (9, 5) code passes every MDS and repair case."""
    result = runner.invoke(cli, ["verify", "--n", "9", "--k", "5", "--no-types"])
    assert result.exit_code == 0, result.output
    assert "mds 126/126 pass, repair 252/252 pass" in result.output


def test_verify_json(runner):
    """Test the verification summary as JSON."""
    result = runner.invoke(cli, ["verify", "--n", "6", "--k", "2", "-o", "json"])
    assert result.exit_code == 0, result.output
    start = result.output.index("[")
    end = result.output.rindex("]") + 1
    rows = json.loads(result.output[start:end])
    assert [row["kind"] for row in rows] == ["mds", "repair", "type"]
    assert all(row["ok"] for row in rows)


def test_verify_refuses_large_instance(runner):
    """Test the sweep size guard."""
    result = runner.invoke(cli, ["verify", "--n", "15", "--k", "5"])
    assert result.exit_code != 0
    assert "n <= 12" in result.output


def test_bench_ratio(runner):
    """Test bench reports the repair-to-naive download ratio."""
    result = runner.invoke(cli, ["bench", "--n", "9", "--k", "5", "--trials", "5", "-o", "json"])
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    assert data["ratio"] == "3/5"
    assert data["repair_symbols"] == 24

    result = runner.invoke(cli, ["bench", "--n", "6", "--k", "2", "--trials", "5"])
    assert result.exit_code == 0, result.output
    assert "3/4" in result.output


def test_config_default_format_applies(runner, monkeypatch):
    """Test MSR_OUTPUT_FORMAT switches commands to JSON."""
    monkeypatch.setenv("MSR_OUTPUT_FORMAT", "json")
    result = runner.invoke(cli, ["params", "--n", "6", "--k", "2"])
    assert result.exit_code == 0
    assert json.loads(result.output)["ell"] == 4


def test_configured_modulus_applies(runner, monkeypatch):
    """Test MSR_MODULUS is used when --p is omitted."""
    monkeypatch.setenv("MSR_MODULUS", "263")
    result = runner.invoke(cli, ["params", "--n", "6", "--k", "2", "-o", "json"])
    assert result.exit_code == 0
    assert json.loads(result.output)["p"] == 263


def test_verify_prints_type_sweep_separately(runner):
    """Test the MDS and repair summary line is not extended by the type sweep."""
    result = runner.invoke(cli, ["verify", "--n", "6", "--k", "4"])
    assert result.exit_code == 0, result.output
    lines = [line.strip() for line in result.output.splitlines()]
    assert "✓ mds 15/15 pass, repair 6/6 pass" in lines
    assert any(line.startswith("✓ type ") and line.endswith(" pass") for line in lines)
