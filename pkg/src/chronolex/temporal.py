"""Per-time-slice word vectors built by aggregating n-gram contexts.

For every (slice, middle word) pair seen in the corpus, the index stores a
count-weighted mean of the combined context vectors: each n-gram contributes
its combined non-middle word embeddings with weight count / N, where N is the
total count of all n-grams sharing that slice and middle word. The weights sum
to 1, so every stored vector is a convex combination of context vectors.

Accumulation runs in float64 in a single pass; finalized vectors are stored as
float32, which is also the on-disk precision, so a save/load round trip is
bit-exact.
"""

from __future__ import annotations

import enum
import json
import struct
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Union

import numpy as np

from .corpus import NgramRecord, TimeSliceConfig
from .embeddings import StaticEmbeddingTable
from .errors import (
    ChecksumMismatch,
    EmptyInput,
    FormatVersionMismatch,
    MixedArity,
    SliceOutOfRange,
)

FORMAT_VERSION = 1
MANIFEST_NAME = "manifest.json"
ENTRIES_NAME = "entries.bin"
CHECKSUM_ALGORITHM = "crc32"


class ContextOperator(enum.Enum):
    """How the non-middle word vectors of an n-gram are combined."""

    SUM = "sum"
    CONCAT = "concat"

    def output_dim(self, dim: int, n: int) -> int:
        if self is ContextOperator.SUM:
            return dim
        return (n - 1) * dim


def combine_context(
    record: NgramRecord,
    table: StaticEmbeddingTable,
    op: ContextOperator,
) -> np.ndarray:
    """Combine the embeddings of a record's non-middle words.

    Sum adds the context vectors element-wise; concat joins them left to
    right by position. Out-of-vocabulary context words fall back to the
    table's unknown vector, so this never fails.
    """
    middle = record.n // 2
    vectors = [
        table.lookup(word)
        for position, word in enumerate(record.words)
        if position != middle
    ]
    if op is ContextOperator.SUM:
        out = np.zeros(table.dim, dtype=np.float64)
        for vec in vectors:
            out += vec
        return out
    return np.concatenate(vectors).astype(np.float64, copy=False)


@dataclass
class TemporalIndex:
    """Materialized (slice, word) -> vector map with per-key normalizers.

    A (slice, word) pair with no corpus evidence is absent from both maps;
    it is never stored as a zero vector.
    """

    config: TimeSliceConfig
    operator: ContextOperator
    n: int
    dim: int
    dim_out: int
    vectors: dict[tuple[int, str], np.ndarray]
    normalizers: dict[tuple[int, str], int]

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def words(self) -> set[str]:
        """Distinct words indexed as middle words in at least one slice."""
        return {word for _, word in self.vectors}

    def temporal_vector(self, slice_index: int, word: str) -> Optional[np.ndarray]:
        """Return the stored vector for (slice, word), or None if absent.

        Raises SliceOutOfRange when the slice index is not in [0, slice_count).
        """
        if slice_index < 0 or slice_index >= self.config.slice_count:
            raise SliceOutOfRange(
                f"slice {slice_index} outside [0, {self.config.slice_count})"
            )
        return self.vectors.get((slice_index, word))


def temporal_vector(
    index: TemporalIndex, slice_index: int, word: str
) -> Optional[np.ndarray]:
    """Functional form of TemporalIndex.temporal_vector."""
    return index.temporal_vector(slice_index, word)


def build_temporal_index(
    records: Iterable[tuple[int, NgramRecord]],
    table: StaticEmbeddingTable,
    op: ContextOperator,
    config: TimeSliceConfig,
    n: Optional[int] = None,
) -> TemporalIndex:
    """Accumulate (slice, record) pairs into a TemporalIndex in one pass.

    Unnormalized count-weighted context sums are accumulated in float64 and
    divided by the per-key total count at finalization, then cast to float32.

    Raises MixedArity if records disagree on n, EmptyInput if the stream is
    empty and n was not given.
    """
    sums: dict[tuple[int, str], np.ndarray] = {}
    norms: dict[tuple[int, str], int] = {}
    for slice_index, record in records:
        if n is None:
            n = record.n
        elif record.n != n:
            raise MixedArity(f"record has n={record.n}, expected {n}")
        key = (slice_index, record.middle_word)
        contribution = record.count * combine_context(record, table, op)
        acc = sums.get(key)
        if acc is None:
            sums[key] = contribution
            norms[key] = record.count
        else:
            acc += contribution
            norms[key] += record.count
    if n is None:
        raise EmptyInput("empty record stream and no explicit n")

    vectors = {
        key: (acc / norms[key]).astype(np.float32) for key, acc in sums.items()
    }
    for vec in vectors.values():
        vec.setflags(write=False)
    return TemporalIndex(
        config=config,
        operator=op,
        n=n,
        dim=table.dim,
        dim_out=op.output_dim(table.dim, n),
        vectors=vectors,
        normalizers=norms,
    )


def _encode_varint(value: int) -> bytes:
    out = bytearray()
    while True:
        byte = value & 0x7F
        value >>= 7
        if value:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return bytes(out)


def _decode_varint(buf: bytes, offset: int) -> tuple[int, int]:
    result = 0
    shift = 0
    while True:
        if offset >= len(buf):
            raise ChecksumMismatch("entries file ends inside a varint")
        byte = buf[offset]
        offset += 1
        result |= (byte & 0x7F) << shift
        if not byte & 0x80:
            return result, offset
        shift += 7


def save_index(index: TemporalIndex, destination: Union[str, Path]) -> None:
    """Write the index to a directory as manifest.json + entries.bin.

    Entries are sorted by (slice, UTF-8 word bytes). Each entry is a varint
    word length, the word bytes, a little-endian uint16 slice, a little-endian
    uint64 normalizer, and dim_out little-endian float32 components. The file
    ends with a CRC-32 of everything before it.
    """
    dest = Path(destination)
    dest.mkdir(parents=True, exist_ok=True)
    if index.config.slice_count > 0xFFFF:
        raise ValueError("slice count does not fit the 16-bit on-disk slice field")

    payload = bytearray()
    entry_keys = sorted(
        index.vectors, key=lambda key: (key[0], key[1].encode("utf-8"))
    )
    for slice_index, word in entry_keys:
        word_bytes = word.encode("utf-8")
        payload += _encode_varint(len(word_bytes))
        payload += word_bytes
        payload += struct.pack("<H", slice_index)
        payload += struct.pack("<Q", index.normalizers[(slice_index, word)])
        vec = index.vectors[(slice_index, word)]
        payload += np.ascontiguousarray(vec, dtype="<f4").tobytes()
    crc = zlib.crc32(bytes(payload)) & 0xFFFFFFFF

    manifest = {
        "format_version": FORMAT_VERSION,
        "n": index.n,
        "operator": index.operator.value,
        "dim": index.dim,
        "dim_out": index.dim_out,
        "slices": {
            "start_year": index.config.start_year,
            "end_year": index.config.end_year,
            "width_years": index.config.width_years,
        },
        "entry_count": len(index.vectors),
        "checksum": CHECKSUM_ALGORITHM,
    }
    (dest / MANIFEST_NAME).write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )
    (dest / ENTRIES_NAME).write_bytes(bytes(payload) + struct.pack("<I", crc))


def load_index(source: Union[str, Path]) -> TemporalIndex:
    """Read an index directory written by save_index. Bit-exact inverse of save.

    Raises FormatVersionMismatch for unknown versions or checksum algorithms,
    ChecksumMismatch for truncated or corrupted entry files.
    """
    src = Path(source)
    manifest = json.loads((src / MANIFEST_NAME).read_text(encoding="utf-8"))
    version = manifest.get("format_version")
    if version != FORMAT_VERSION:
        raise FormatVersionMismatch(f"unsupported format version {version!r}")
    if manifest.get("checksum") != CHECKSUM_ALGORITHM:
        raise FormatVersionMismatch(
            f"unsupported checksum algorithm {manifest.get('checksum')!r}"
        )

    blob = (src / ENTRIES_NAME).read_bytes()
    if len(blob) < 4:
        raise ChecksumMismatch("entries file shorter than its checksum")
    payload, stored = blob[:-4], struct.unpack("<I", blob[-4:])[0]
    if zlib.crc32(payload) & 0xFFFFFFFF != stored:
        raise ChecksumMismatch("entries file failed CRC-32 verification")

    dim_out = int(manifest["dim_out"])
    entry_count = int(manifest["entry_count"])
    vectors: dict[tuple[int, str], np.ndarray] = {}
    normalizers: dict[tuple[int, str], int] = {}
    offset = 0
    vec_bytes = 4 * dim_out
    for _ in range(entry_count):
        word_len, offset = _decode_varint(payload, offset)
        end = offset + word_len + 2 + 8 + vec_bytes
        if end > len(payload):
            raise ChecksumMismatch("entries file ends inside an entry")
        word = payload[offset : offset + word_len].decode("utf-8")
        offset += word_len
        slice_index = struct.unpack_from("<H", payload, offset)[0]
        offset += 2
        normalizer = struct.unpack_from("<Q", payload, offset)[0]
        offset += 8
        vec = np.frombuffer(payload, dtype="<f4", count=dim_out, offset=offset).copy()
        vec.setflags(write=False)
        offset += vec_bytes
        vectors[(slice_index, word)] = vec
        normalizers[(slice_index, word)] = normalizer
    if offset != len(payload):
        raise ChecksumMismatch(
            f"{len(payload) - offset} trailing bytes after {entry_count} entries"
        )

    slices = manifest["slices"]
    return TemporalIndex(
        config=TimeSliceConfig(
            start_year=int(slices["start_year"]),
            end_year=int(slices["end_year"]),
            width_years=int(slices["width_years"]),
        ),
        operator=ContextOperator(manifest["operator"]),
        n=int(manifest["n"]),
        dim=int(manifest["dim"]),
        dim_out=dim_out,
        vectors=vectors,
        normalizers=normalizers,
    )
