"""Static word embedding table: load from text, look up with an unknown-word fallback.

The table realizes a fixed map from vocabulary words to d-dimensional vectors.
Out-of-vocabulary words resolve to a designated unknown vector, so lookups are
total. The table is immutable after loading and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Optional, Union

import numpy as np

from .errors import DimensionMismatch, EmptyTable, MalformedLine


@dataclass(frozen=True)
class StaticEmbeddingTable:
    """Word -> vector map with a fallback vector for unknown words.

    Attributes:
        dim: embedding dimension; every stored vector has this length.
        entries: word -> float64 vector of length dim.
        unknown_vector: vector returned for out-of-vocabulary words.
    """

    dim: int
    entries: dict[str, np.ndarray]
    unknown_vector: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.dim <= 0:
            raise DimensionMismatch(f"dim must be positive, got {self.dim}")
        if len(self.unknown_vector) != self.dim:
            raise DimensionMismatch(
                f"unknown vector has length {len(self.unknown_vector)}, expected {self.dim}"
            )
        for word, vec in self.entries.items():
            if not word:
                raise MalformedLine("empty word key")
            if len(vec) != self.dim:
                raise DimensionMismatch(
                    f"vector for {word!r} has length {len(vec)}, expected {self.dim}"
                )

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def lookup(self, word: str) -> np.ndarray:
        """Return the vector for `word`, or the unknown vector if absent. Never fails."""
        vec = self.entries.get(word)
        return vec if vec is not None else self.unknown_vector


def _parse_vector(parts: list[str], lineno: int) -> np.ndarray:
    try:
        vec = np.array([float(p) for p in parts], dtype=np.float64)
    except ValueError as exc:
        raise MalformedLine(f"line {lineno}: non-numeric vector component") from exc
    vec.setflags(write=False)
    return vec


def load_static_embeddings(
    source: Union[str, Path, IO[str], Iterable[str]],
    unknown_token: Optional[str] = None,
) -> StaticEmbeddingTable:
    """Parse a line-oriented embedding file into a StaticEmbeddingTable.

    Each non-empty, non-comment (`#`) line is `word v1 v2 ... vd`, whitespace
    separated. An optional first line `COUNT DIM` (two integers) is consumed
    as a header and validated against the parsed content. The dimension is
    fixed by the first data line.

    If `unknown_token` is given and present in the file, its vector becomes
    the unknown vector (and the token stays a regular entry); otherwise the
    unknown vector is all zeros.

    Raises:
        DimensionMismatch: a line's vector length differs from the first line's.
        MalformedLine: non-numeric component.
        EmptyTable: no data lines at all.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as handle:
            return load_static_embeddings(handle, unknown_token)

    entries: dict[str, np.ndarray] = {}
    dim: Optional[int] = None
    header: Optional[tuple[int, int]] = None
    saw_first_line = False

    for lineno, raw in enumerate(source, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split()
        if not saw_first_line:
            saw_first_line = True
            # Optional `COUNT DIM` header: exactly two integer tokens.
            if len(parts) == 2:
                try:
                    header = (int(parts[0]), int(parts[1]))
                    continue
                except ValueError:
                    pass
        if len(parts) < 2:
            raise MalformedLine(f"line {lineno}: expected `word v1 ... vd`")
        word, components = parts[0], parts[1:]
        vec = _parse_vector(components, lineno)
        if dim is None:
            dim = len(vec)
        elif len(vec) != dim:
            raise DimensionMismatch(
                f"line {lineno}: vector length {len(vec)}, expected {dim}"
            )
        entries[word] = vec

    if dim is None or not entries:
        raise EmptyTable("no data lines in embedding source")
    if header is not None:
        count, header_dim = header
        if header_dim != dim:
            raise DimensionMismatch(
                f"header declares dim {header_dim}, data lines have dim {dim}"
            )
        if count != len(entries):
            raise MalformedLine(
                f"header declares {count} entries, parsed {len(entries)}"
            )

    if unknown_token is not None and unknown_token in entries:
        unknown_vector = entries[unknown_token]
    else:
        unknown_vector = np.zeros(dim, dtype=np.float64)
        unknown_vector.setflags(write=False)
    return StaticEmbeddingTable(dim=dim, entries=entries, unknown_vector=unknown_vector)
