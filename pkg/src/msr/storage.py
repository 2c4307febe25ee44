"""File coding: stripes of bytes to chunk files and back.

Every byte is one symbol, so the field must have at least 257 elements.
A stripe holds k*ell bytes laid out node-major (byte s*k*ell + i*ell + a is
data symbol C_i(a) of stripe s). Each node's symbols are written to its own
chunk file, stripes in order, each symbol as ``symbol_width(p)``
little-endian bytes.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
from contextlib import ExitStack, contextmanager
from pathlib import Path
from typing import BinaryIO

import numpy as np

from .codec import decode_erasures, encode
from .construct import CodeParams, build_parity_blocks
from .exceptions import (
    ChunkFormatError,
    InvalidParametersError,
    ManifestError,
    TooManyErasuresError,
)
from .field import FILE_MODE_MIN_MODULUS
from .models.repair import RepairTranscript
from .models.storage import MANIFEST_NAME, ChunkHeader, Manifest, chunk_name, symbol_width
from .repair import check_helpers, cut_set_bound, helper_response, plan_repair, repairer_for

log = logging.getLogger(__name__)

# Stripes coded per batch; bounds memory independently of file size.
STRIPE_BATCH = 4096


def encode_symbols(symbols: np.ndarray, p: int) -> bytes:
    """Serialize symbols as little-endian ``symbol_width(p)``-byte integers."""
    width = symbol_width(p)
    wide = np.ascontiguousarray(symbols, dtype="<u8").reshape(-1)
    return wide.view(np.uint8).reshape(-1, 8)[:, :width].tobytes()


def decode_symbols(raw: bytes, p: int) -> np.ndarray:
    width = symbol_width(p)
    if len(raw) % width:
        raise ChunkFormatError(f"Payload of {len(raw)} bytes is not a multiple of {width}")
    narrow = np.frombuffer(raw, dtype=np.uint8).reshape(-1, width)
    wide = np.zeros((narrow.shape[0], 8), dtype=np.uint8)
    wide[:, :width] = narrow
    values = wide.view("<u8").reshape(-1).astype(np.int64)
    if values.size and int(values.max()) >= p:
        raise ChunkFormatError(f"Chunk holds a symbol >= p={p}")
    return values


def write_chunk(path: Path, header: ChunkHeader, symbols: np.ndarray) -> None:
    """Write a complete chunk: header then (stripes, ell) symbols."""
    with open(path, "wb") as f:
        f.write(header.pack())
        f.write(encode_symbols(symbols, header.p))


def read_header(path: Path) -> ChunkHeader:
    with open(path, "rb") as f:
        header = ChunkHeader.unpack(f.read(ChunkHeader.SIZE))
    actual = path.stat().st_size
    if actual != ChunkHeader.SIZE + header.payload_size:
        raise ChunkFormatError(
            f"{path.name} is {actual} bytes, its header promises {ChunkHeader.SIZE + header.payload_size}"
        )
    return header


def read_chunk(path: Path) -> tuple[ChunkHeader, np.ndarray]:
    """Read a chunk back as its header and a (stripes, ell) int64 array."""
    header = read_header(path)
    with open(path, "rb") as f:
        f.seek(ChunkHeader.SIZE)
        symbols = decode_symbols(f.read(), header.p)
    return header, symbols.reshape(header.stripes, header.ell)


@contextmanager
def _staged_output(path: Path) -> Iterator[BinaryIO]:
    """Write to a sibling file and move it onto ``path`` only on success."""
    staged = path.with_name(path.name + ".partial")
    try:
        with open(staged, "wb") as f:
            yield f
        staged.replace(path)
    finally:
        staged.unlink(missing_ok=True)


def check_file_mode(params: CodeParams) -> None:
    if params.p < FILE_MODE_MIN_MODULUS:
        raise InvalidParametersError(
            f"File coding maps one byte to one symbol and needs p >= {FILE_MODE_MIN_MODULUS}, "
            f"got p={params.p}"
        )


def _batches(stripes: int) -> Iterator[int]:
    done = 0
    while done < stripes:
        size = min(STRIPE_BATCH, stripes - done)
        yield size
        done += size


def encode_file(source: Path, out_dir: Path, params: CodeParams) -> Manifest:
    """Encode ``source`` into n chunk files plus a manifest under ``out_dir``."""
    check_file_mode(params)
    blocks = build_parity_blocks(params)
    length = source.stat().st_size
    stripe_bytes = params.k * params.ell
    stripes = -(-length // stripe_bytes)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = Manifest(
        n=params.n,
        k=params.k,
        p=params.p,
        lambdas=list(params.lambdas),
        length=length,
        stripes=stripes,
        chunks=[chunk_name(node) for node in range(params.n)],
    )
    log.info("Encoding %s: %d bytes in %d stripes", source, length, stripes)

    with ExitStack() as stack:
        src = stack.enter_context(open(source, "rb"))
        outs = [stack.enter_context(open(out_dir / name, "wb")) for name in manifest.chunks]
        for node, out in enumerate(outs):
            out.write(manifest.expected_header(node).pack())
        for size in _batches(stripes):
            raw = src.read(size * stripe_bytes)
            data = np.zeros(size * stripe_bytes, dtype=np.int64)
            data[: len(raw)] = np.frombuffer(raw, dtype=np.uint8)
            words = encode(params, blocks, data.reshape(size, params.k, params.ell))
            symbols = words.view(np.ndarray)
            for node, out in enumerate(outs):
                out.write(encode_symbols(symbols[:, node, :], params.p))

    manifest.save(out_dir / MANIFEST_NAME)
    return manifest


def _resolve_manifest(path: Path) -> Path:
    return path / MANIFEST_NAME if path.is_dir() else path


def load_params(manifest: Manifest) -> CodeParams:
    return CodeParams(n=manifest.n, k=manifest.k, p=manifest.p, lambdas=tuple(manifest.lambdas))


def _open_chunks(
    stack: ExitStack, base: Path, manifest: Manifest, nodes: Iterable[int]
) -> dict[int, BinaryIO]:
    handles = {}
    for node in nodes:
        path = base / manifest.chunks[node]
        if not path.exists():
            raise ChunkFormatError(f"Chunk {path.name} of node {node} is missing")
        header = read_header(path)
        if header != manifest.expected_header(node):
            raise ChunkFormatError(
                f"{path.name} belongs to a different code or file "
                f"(n={header.n}, k={header.k}, p={header.p}, node={header.node}, "
                f"stripes={header.stripes})"
            )
        f = stack.enter_context(open(path, "rb"))
        f.seek(ChunkHeader.SIZE)
        handles[node] = f
    return handles


def available_nodes(manifest_path: Path) -> tuple[Manifest, list[int]]:
    """The manifest and the nodes whose chunk files are present."""
    manifest_path = _resolve_manifest(manifest_path)
    manifest = Manifest.load(manifest_path)
    if len(manifest.chunks) != manifest.n:
        raise ManifestError(f"Manifest {manifest_path} does not list {manifest.n} chunks")
    base = manifest_path.parent
    present = [node for node, name in enumerate(manifest.chunks) if (base / name).exists()]
    return manifest, present


def decode_file(manifest_path: Path, output: Path) -> Manifest:
    """Rebuild the original file from whatever chunks are present.

    Raises:
        TooManyErasuresError: Fewer than k chunks are present
    """
    manifest_path = _resolve_manifest(manifest_path)
    manifest, present = available_nodes(manifest_path)
    params = load_params(manifest)
    missing = [node for node in range(params.n) if node not in present]
    if len(missing) > params.r:
        raise TooManyErasuresError(
            f"{len(present)} of {params.n} chunks present; at least k={params.k} are needed"
        )
    blocks = build_parity_blocks(params)
    width = symbol_width(params.p)
    log.info("Decoding %d stripes with nodes %s missing", manifest.stripes, missing)

    remaining = manifest.length
    with ExitStack() as stack:
        handles = _open_chunks(stack, manifest_path.parent, manifest, present)
        out = stack.enter_context(_staged_output(output))
        for size in _batches(manifest.stripes):
            words = np.zeros((size, params.n, params.ell), dtype=np.int64)
            for node, f in handles.items():
                raw = f.read(size * params.ell * width)
                words[:, node, :] = decode_symbols(raw, params.p).reshape(size, params.ell)
            if missing:
                filled = decode_erasures(params, blocks, params.field(words), missing)
                words = filled.view(np.ndarray)
            data = words[:, : params.k, :].reshape(-1)
            if data.size and int(data.max()) > 255:
                raise ChunkFormatError("Recovered data symbols do not fit in a byte")
            keep = min(remaining, data.size)
            out.write(data[:keep].astype(np.uint8).tobytes())
            remaining -= keep
    return manifest


def repair_chunk(
    manifest_path: Path,
    failed: int,
    helpers: Iterable[int],
    output: Path | None = None,
) -> RepairTranscript:
    """Regenerate the chunk of ``failed`` from d helper chunks.

    Each helper contributes only its planned ell/2 symbols per stripe; the
    transcript counts exactly those.
    """
    manifest_path = _resolve_manifest(manifest_path)
    manifest = Manifest.load(manifest_path)
    params = load_params(manifest)
    chosen = check_helpers(params, failed, helpers)
    blocks = build_parity_blocks(params)
    plan = plan_repair(params, failed)
    repairer = repairer_for(blocks, failed, chosen)
    width = symbol_width(params.p)
    base = manifest_path.parent
    target = output if output is not None else base / manifest.chunks[failed]
    log.info("Repairing node %d from helpers %s", failed, list(chosen))

    downloaded = 0
    with ExitStack() as stack:
        handles = _open_chunks(stack, base, manifest, chosen)
        out = stack.enter_context(_staged_output(target))
        out.write(manifest.expected_header(failed).pack())
        for size in _batches(manifest.stripes):
            sent = {}
            for node, f in handles.items():
                raw = f.read(size * params.ell * width)
                column = params.field(decode_symbols(raw, params.p).reshape(size, params.ell))
                sent[node] = helper_response(plan, column)
                downloaded += sent[node].size
            recovered = repairer.repair(sent)
            out.write(encode_symbols(recovered.view(np.ndarray), params.p))

    return RepairTranscript(
        failed=failed,
        helpers=chosen,
        stripes=manifest.stripes,
        symbols_downloaded=downloaded,
        cut_set_bound=cut_set_bound(params),
    )
