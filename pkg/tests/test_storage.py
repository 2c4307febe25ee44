"""Tests for chunk files, manifests and file coding."""

import os
from itertools import combinations

import numpy as np
import pytest

from msr.construct import CodeParams
from msr.exceptions import (
    ChunkFormatError,
    InvalidParametersError,
    ManifestError,
    TooManyErasuresError,
    WrongHelperCountError,
)
from msr.models import MANIFEST_NAME, ChunkHeader, Manifest, chunk_name, symbol_width
from msr.storage import (
    available_nodes,
    decode_file,
    decode_symbols,
    encode_file,
    encode_symbols,
    read_chunk,
    repair_chunk,
    write_chunk,
)


@pytest.fixture
def params():
    """The (9, 5) code over GF(257)."""
    return CodeParams.create(9, 5)


def _encode(tmp_path, params, payload):
    source = tmp_path / "source.bin"
    source.write_bytes(payload)
    out = tmp_path / "chunks"
    manifest = encode_file(source, out, params)
    return out, manifest


def test_symbol_width():
    """Test bytes per symbol for a few moduli."""
    assert symbol_width(251) == 1
    assert symbol_width(257) == 2
    assert symbol_width(65537) == 3


def test_symbol_codec():
    """Test symbols serialize as little-endian fixed-width integers."""
    raw = encode_symbols(np.array([1, 256, 258]), 263)
    assert raw == bytes([1, 0, 0, 1, 2, 1])
    assert list(decode_symbols(raw, 263)) == [1, 256, 258]
    with pytest.raises(ChunkFormatError):
        decode_symbols(raw, 257)
    with pytest.raises(ChunkFormatError):
        decode_symbols(b"\x00\x01\x02", 257)


def test_chunk_header():
    """Test the header layout and its validation."""
    header = ChunkHeader(p=257, n=9, k=5, node=3, ell=8, stripes=2)
    raw = header.pack()
    assert len(raw) == ChunkHeader.SIZE == 27
    assert raw[:4] == b"MSRC"
    assert ChunkHeader.unpack(raw) == header
    assert header.payload_size == 2 * 8 * 2
    with pytest.raises(ChunkFormatError):
        ChunkHeader.unpack(b"XXXX" + raw[4:])
    with pytest.raises(ChunkFormatError):
        ChunkHeader.unpack(raw[:10])


def test_chunk_name():
    """Test chunk files are numbered by node."""
    assert chunk_name(0) == "node-000.chunk"
    assert chunk_name(12) == "node-012.chunk"


def test_manifest_validation():
    """Test inconsistent manifests are refused."""
    with pytest.raises(ManifestError):
        Manifest(n=9, k=5, p=257, lambdas=[0, 1, 2])
    with pytest.raises(ManifestError):
        Manifest(n=9, k=5, p=257, lambdas=list(range(18)), length=41, stripes=1)
    with pytest.raises(ManifestError):
        Manifest(format_version=2, n=9, k=5, p=257, lambdas=list(range(18)))


def test_manifest_load_errors(tmp_path):
    """Test missing or malformed manifest files raise ManifestError."""
    with pytest.raises(ManifestError):
        Manifest.load(tmp_path / "missing.toml")
    broken = tmp_path / "broken.toml"
    broken.write_text("n = [")
    with pytest.raises(ManifestError):
        Manifest.load(broken)
    incomplete = tmp_path / "incomplete.toml"
    incomplete.write_text("n = 9\n")
    with pytest.raises(ManifestError):
        Manifest.load(incomplete)


def test_encode_empty_file(tmp_path, params):
    """Test an empty file has no stripes and round-trips."""
    out, manifest = _encode(tmp_path, params, b"")
    assert manifest.stripes == 0
    assert manifest.length == 0
    for node in range(9):
        assert (out / chunk_name(node)).stat().st_size == ChunkHeader.SIZE
    restored = tmp_path / "restored.bin"
    decode_file(out, restored)
    assert restored.read_bytes() == b""


@pytest.mark.parametrize("length,stripes", [(40, 1), (41, 2), (1, 1), (400, 10)])
def test_stripe_count(tmp_path, params, length, stripes):
    """Test each stripe holds k * ell bytes."""
    out, manifest = _encode(tmp_path, params, os.urandom(length))
    assert manifest.stripes == stripes
    header, symbols = read_chunk(out / chunk_name(0))
    assert header.stripes == stripes
    assert symbols.shape == (stripes, 8)


def test_manifest_written(tmp_path, params):
    """Test the saved manifest describes the instance."""
    out, manifest = _encode(tmp_path, params, b"hello world")
    loaded = Manifest.load(out / MANIFEST_NAME)
    assert loaded == manifest
    assert loaded.lambdas == list(params.lambdas)
    assert loaded.chunks == [chunk_name(node) for node in range(9)]


def test_data_chunks_hold_the_bytes(tmp_path, params):
    """Test data chunks are systematic: node i holds bytes i*ell..(i+1)*ell of each stripe."""
    payload = bytes(range(80))
    out, _ = _encode(tmp_path, params, payload)
    _, symbols = read_chunk(out / chunk_name(2))
    assert list(symbols[0]) == list(range(16, 24))
    assert list(symbols[1]) == list(range(56, 64))


def test_round_trip_with_every_r_deletion(tmp_path, params):
    """Test the file is restored after deleting any r chunks."""
    payload = os.urandom(1000)
    out, _ = _encode(tmp_path, params, payload)
    originals = {node: (out / chunk_name(node)).read_bytes() for node in range(9)}
    restored = tmp_path / "restored.bin"
    for erased in combinations(range(9), 4):
        for node in erased:
            (out / chunk_name(node)).unlink()
        manifest, present = available_nodes(out)
        assert present == [node for node in range(9) if node not in erased]
        decode_file(out / MANIFEST_NAME, restored)
        assert restored.read_bytes() == payload
        for node in erased:
            (out / chunk_name(node)).write_bytes(originals[node])


def test_too_many_deletions(tmp_path, params):
    """Test r+1 missing chunks cannot be decoded."""
    out, _ = _encode(tmp_path, params, os.urandom(100))
    for node in (0, 2, 4, 6, 8):
        (out / chunk_name(node)).unlink()
    with pytest.raises(TooManyErasuresError):
        decode_file(out, tmp_path / "restored.bin")


def test_file_mode_needs_byte_sized_field(tmp_path):
    """Test file coding refuses fields with fewer than 257 elements."""
    small = CodeParams.create(9, 5, p=19)
    source = tmp_path / "source.bin"
    source.write_bytes(b"abc")
    with pytest.raises(InvalidParametersError):
        encode_file(source, tmp_path / "chunks", small)


def test_repair_chunk_is_byte_identical(tmp_path, params):
    """Test a regenerated chunk equals the lost one."""
    out, _ = _encode(tmp_path, params, os.urandom(2000))
    lost = out / chunk_name(0)
    original = lost.read_bytes()
    lost.unlink()
    transcript = repair_chunk(out, 0, [1, 2, 3, 4, 5, 6])
    assert lost.read_bytes() == original
    assert transcript.stripes == 50
    assert transcript.symbols_downloaded == 50 * 24
    assert transcript.optimal


def test_repair_chunk_to_other_path(tmp_path, params):
    """Test repair output can go to a separate file."""
    out, _ = _encode(tmp_path, params, os.urandom(300))
    original = (out / chunk_name(8)).read_bytes()
    target = tmp_path / "node8.chunk"
    repair_chunk(out / MANIFEST_NAME, 8, [0, 1, 3, 4, 6, 7], target)
    assert target.read_bytes() == original


def test_repair_chunk_bad_helpers(tmp_path, params):
    """Test helper sets of the wrong size or including the failed node."""
    out, _ = _encode(tmp_path, params, os.urandom(100))
    with pytest.raises(WrongHelperCountError):
        repair_chunk(out, 0, [1, 2, 3, 4, 5])
    with pytest.raises(WrongHelperCountError):
        repair_chunk(out, 0, [0, 1, 2, 3, 4, 5])


def test_mismatched_chunk_rejected(tmp_path, params):
    """Test a chunk from another node is detected by its header."""
    out, _ = _encode(tmp_path, params, os.urandom(100))
    (out / chunk_name(0)).write_bytes((out / chunk_name(1)).read_bytes())
    with pytest.raises(ChunkFormatError):
        decode_file(out, tmp_path / "restored.bin")


def test_truncated_chunk_rejected(tmp_path, params):
    """Test a chunk shorter than its header promises is detected."""
    out, _ = _encode(tmp_path, params, os.urandom(100))
    path = out / chunk_name(3)
    path.write_bytes(path.read_bytes()[:-1])
    with pytest.raises(ChunkFormatError):
        decode_file(out, tmp_path / "restored.bin")


def test_write_and_read_chunk(tmp_path):
    """Test a chunk written by hand is read back with its header."""
    header = ChunkHeader(p=263, n=6, k=2, node=4, ell=4, stripes=2)
    symbols = np.array([[0, 1, 256, 262], [5, 6, 7, 8]])
    path = tmp_path / chunk_name(4)
    write_chunk(path, header, symbols)
    assert path.stat().st_size == ChunkHeader.SIZE + 16
    loaded, values = read_chunk(path)
    assert loaded == header
    assert np.array_equal(values, symbols)


def _overwrite_first_symbol(path, raw):
    data = bytearray(path.read_bytes())
    data[ChunkHeader.SIZE : ChunkHeader.SIZE + len(raw)] = raw
    path.write_bytes(bytes(data))


def test_failed_decode_keeps_previous_output(tmp_path, params):
    """Test a decode that fails mid-stream leaves the output file untouched."""
    out, _ = _encode(tmp_path, params, os.urandom(500))
    # 256 is a valid GF(257) symbol but not a byte
    _overwrite_first_symbol(out / chunk_name(0), bytes([0, 1]))
    restored = tmp_path / "restored.bin"
    restored.write_bytes(b"previous")
    with pytest.raises(ChunkFormatError):
        decode_file(out, restored)
    assert restored.read_bytes() == b"previous"
    assert not list(tmp_path.glob("*.partial"))


def test_failed_repair_leaves_no_chunk(tmp_path, params):
    """Test a repair that fails mid-stream does not leave a partial chunk behind."""
    out, _ = _encode(tmp_path, params, os.urandom(500))
    lost = out / chunk_name(0)
    lost.unlink()
    _overwrite_first_symbol(out / chunk_name(1), bytes([255, 255]))
    with pytest.raises(ChunkFormatError):
        repair_chunk(out, 0, [1, 2, 3, 4, 5, 6])
    assert not lost.exists()
    assert not list(out.glob("*.partial"))
