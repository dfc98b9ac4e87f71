"""On-disk column files and the JSON manifest.

Each column file is a sequence of records, one per stripe.  A record is a
fixed little-endian header followed by ceil(L/8) payload bytes with bit l of
the column in byte l // 8, bit position l % 8.
"""
from __future__ import annotations

import json
import struct
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .code import CodeParams, Family, validate
from .errors import FormatError, ParameterError

MAGIC = b"BMDS1"
HEADER = struct.Struct("<5sBIIIII")  # magic, family, k, r, p, column, L
FAMILY_TAG = {Family.C1: 1, Family.C2: 2}
TAG_FAMILY = {v: k for k, v in FAMILY_TAG.items()}
MANIFEST_NAME = "manifest.json"


def payload_size(L: int) -> int:
    return (L + 7) // 8


def pack_record(params: CodeParams, column: int, bits: int) -> bytes:
    L = params.stored_bits
    head = HEADER.pack(MAGIC, FAMILY_TAG[params.family], params.k, params.r, params.p, column, L)
    return head + bits.to_bytes(payload_size(L), "little")


def unpack_records(raw: bytes, min_k: int = 4):
    """Yield (params, column, bits) for every record in a column file."""
    off = 0
    while off < len(raw):
        if len(raw) - off < HEADER.size:
            raise FormatError("truncated record header")
        magic, tag, k, r, p, column, L = HEADER.unpack_from(raw, off)
        if magic != MAGIC:
            raise FormatError(f"bad magic {magic!r}")
        if tag not in TAG_FAMILY:
            raise FormatError(f"unknown family tag {tag}")
        try:
            params = validate(TAG_FAMILY[tag], k, r, p, min_k=min_k)
        except ParameterError as exc:
            raise FormatError(f"header parameters invalid: {exc}") from None
        if L != params.stored_bits:
            raise FormatError(f"payload length {L} does not match derived L={params.stored_bits}")
        off += HEADER.size
        size = payload_size(L)
        if len(raw) - off < size:
            raise FormatError("truncated payload")
        bits = int.from_bytes(raw[off:off + size], "little")
        if bits >> L:
            raise FormatError("payload has bits set beyond L")
        off += size
        yield params, column, bits


def write_column(path: Path, params: CodeParams, column: int, stripes) -> None:
    path.write_bytes(b"".join(pack_record(params, column, s) for s in stripes))


def read_column(path: Path, params: CodeParams, column: int) -> list[int]:
    out = []
    for hp, col, bits in unpack_records(Path(path).read_bytes()):
        if hp != params or col != column:
            raise FormatError(f"{path}: header says {hp} column {col}, expected {params} column {column}")
        out.append(bits)
    return out


@dataclass
class Manifest:
    family: str
    k: int
    r: int
    p: int
    size: int
    padding: int
    stripes: int
    columns: list
    data_columns: list = field(default_factory=list)  # 1-based

    def params(self) -> CodeParams:
        return validate(self.family, self.k, self.r, self.p)

    def dump(self, path: Path) -> None:
        Path(path).write_text(json.dumps(asdict(self), indent=2) + "\n")

    @classmethod
    def load(cls, path: Path) -> Manifest:
        try:
            data = json.loads(Path(path).read_text())
            m = cls(**data)
        except (OSError, ValueError, TypeError) as exc:
            raise FormatError(f"cannot read manifest {path}: {exc}") from None
        if len(m.columns) != m.k + m.r:
            raise FormatError("manifest column count does not equal k + r")
        if len(m.data_columns) != m.k or not all(1 <= c <= m.k + m.r for c in m.data_columns):
            raise FormatError("manifest data columns are inconsistent with k")
        return m


def split_stripes(data: bytes, params: CodeParams) -> tuple[list[list[int]], int]:
    """Zero-pad and cut ``data`` into stripes of k columns of L bits each.

    Returns the stripes and the number of padding bytes.
    """
    k, L = params.k, params.stored_bits
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
    stripe_bits = k * L
    stripes = max(1, -(-bits.size // stripe_bits))
    padded = np.zeros(stripes * stripe_bits, dtype=np.uint8)
    padded[:bits.size] = bits
    cols = padded.reshape(stripes, k, L)
    out = [[bits_to_int(cols[s, i]) for i in range(k)] for s in range(stripes)]
    padding = payload_size(stripes * stripe_bits) - len(data)
    return out, padding


def join_stripes(stripes: list[list[int]], params: CodeParams, size: int) -> bytes:
    L = params.stored_bits
    parts = [int_to_bits(c, L) for stripe in stripes for c in stripe]
    bits = np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint8)
    return np.packbits(bits, bitorder="little").tobytes()[:size]


def bits_to_int(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def int_to_bits(v: int, L: int) -> np.ndarray:
    raw = np.frombuffer(v.to_bytes(payload_size(L), "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:L]
