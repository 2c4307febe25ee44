"""On-disk manifest and chunk header models."""

import struct
import tomllib
from pathlib import Path
from typing import ClassVar

import tomli_w
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from ..exceptions import ChunkFormatError, ManifestError

CHUNK_MAGIC = b"MSRC"
CHUNK_VERSION = 1
MANIFEST_VERSION = 1
MANIFEST_NAME = "manifest.toml"

# magic, version, p, n, k, node, ell, stripes
_HEADER = struct.Struct("<4sBQHHHII")


def symbol_width(p: int) -> int:
    """Bytes per serialized symbol: ceil(bits(p) / 8)."""
    return (p.bit_length() + 7) // 8


def chunk_name(node: int) -> str:
    return f"node-{node:03d}.chunk"


class ChunkHeader(BaseModel):
    """Fixed little-endian header at the start of every chunk file."""

    model_config = ConfigDict(frozen=True)

    SIZE: ClassVar[int] = _HEADER.size

    version: int = CHUNK_VERSION
    p: int
    n: int
    k: int
    node: int
    ell: int
    stripes: int

    @property
    def width(self) -> int:
        return symbol_width(self.p)

    @property
    def payload_size(self) -> int:
        return self.stripes * self.ell * self.width

    def pack(self) -> bytes:
        return _HEADER.pack(
            CHUNK_MAGIC, self.version, self.p, self.n, self.k, self.node, self.ell, self.stripes
        )

    @classmethod
    def unpack(cls, raw: bytes) -> "ChunkHeader":
        if len(raw) < _HEADER.size:
            raise ChunkFormatError(f"Chunk is shorter than its {_HEADER.size}-byte header")
        magic, version, p, n, k, node, ell, stripes = _HEADER.unpack_from(raw)
        if magic != CHUNK_MAGIC:
            raise ChunkFormatError(f"Bad chunk magic {magic!r}")
        if version != CHUNK_VERSION:
            raise ChunkFormatError(f"Unsupported chunk version {version}")
        return cls(version=version, p=p, n=n, k=k, node=node, ell=ell, stripes=stripes)


class Manifest(BaseModel):
    """Describes one encoded file: code instance, length and chunk names."""

    format_version: int = MANIFEST_VERSION
    n: int
    k: int
    p: int
    lambdas: list[int]
    length: int = 0
    stripes: int = 0
    chunks: list[str] = []

    @model_validator(mode="after")
    def _check_layout(self) -> "Manifest":
        if self.format_version != MANIFEST_VERSION:
            raise ManifestError(f"Unsupported manifest version {self.format_version}")
        if len(self.lambdas) != 2 * self.n:
            raise ManifestError(f"Manifest lists {len(self.lambdas)} lambdas, n={self.n} needs {2 * self.n}")
        if self.chunks and len(self.chunks) != self.n:
            raise ManifestError(f"Manifest lists {len(self.chunks)} chunks for n={self.n}")
        ell = 1 << (self.n // 3)
        if self.length > self.stripes * self.k * ell:
            raise ManifestError(
                f"Length {self.length} does not fit in {self.stripes} stripes of {self.k * ell} bytes"
            )
        return self

    def expected_header(self, node: int) -> ChunkHeader:
        return ChunkHeader(
            p=self.p, n=self.n, k=self.k, node=node, ell=1 << (self.n // 3), stripes=self.stripes
        )

    @classmethod
    def load(cls, path: Path) -> "Manifest":
        if not path.exists():
            raise ManifestError(f"Manifest not found: {path}")
        try:
            with open(path, "rb") as f:
                data = tomllib.load(f)
        except tomllib.TOMLDecodeError as e:
            raise ManifestError(f"Manifest {path} is not valid TOML: {e}") from e
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise ManifestError(f"Manifest {path} is malformed: {e}") from e

    def save(self, path: Path) -> None:
        with open(path, "wb") as f:
            tomli_w.dump(self.model_dump(), f)
