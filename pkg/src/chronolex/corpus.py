"""Timestamped n-gram corpus: line parsing, year-to-slice mapping, streaming ingest.

Corpus lines are TSV: `w1 w2 ... wn<TAB>year<TAB>count[<TAB>extra...]` with the
words separated by single spaces. Years map onto consecutive fixed-width slices
covering [start_year, end_year]; the final slice may be shorter.
"""

from __future__ import annotations

import gzip
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator, Optional, Union

from .errors import (
    MalformedCount,
    MalformedYear,
    WrongArity,
    YearOutOfRange,
)

DEFAULT_N = 5

GZIP_MAGIC = b"\x1f\x8b"


@dataclass(frozen=True)
class NgramRecord:
    """One corpus datum: n words, the year it was observed, and its count."""

    words: tuple[str, ...]
    year: int
    count: int

    def __post_init__(self) -> None:
        if len(self.words) % 2 == 0:
            raise ValueError(f"n must be odd, got {len(self.words)} words")
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")

    @property
    def n(self) -> int:
        return len(self.words)

    @property
    def middle_word(self) -> str:
        """The word at 1-based position (n+1)/2."""
        return self.words[len(self.words) // 2]

    def to_line(self) -> str:
        """Canonical TSV form: words joined by single spaces, then year, then count."""
        return f"{' '.join(self.words)}\t{self.year}\t{self.count}"


@dataclass(frozen=True)
class TimeSliceConfig:
    """Fixed-width year buckets over an inclusive [start_year, end_year] range.

    Slice k covers [start_year + k*width, start_year + (k+1)*width - 1],
    clipped to end_year; the last slice may be partial.
    """

    start_year: int = 1800
    end_year: int = 2008
    width_years: int = 5

    def __post_init__(self) -> None:
        if self.start_year > self.end_year:
            raise ValueError(
                f"start_year {self.start_year} > end_year {self.end_year}"
            )
        if self.width_years < 1:
            raise ValueError(f"width_years must be >= 1, got {self.width_years}")

    @property
    def slice_count(self) -> int:
        span = self.end_year - self.start_year + 1
        return -(-span // self.width_years)

    def slice_of(self, year: int) -> int:
        """Map a year to its 0-based slice index.

        Raises YearOutOfRange outside [start_year, end_year].
        """
        if year < self.start_year or year > self.end_year:
            raise YearOutOfRange(
                f"year {year} outside [{self.start_year}, {self.end_year}]"
            )
        return (year - self.start_year) // self.width_years

    def slice_bounds(self, index: int) -> tuple[int, int]:
        """Inclusive (first_year, last_year) covered by a slice."""
        if index < 0 or index >= self.slice_count:
            raise IndexError(f"slice index {index} outside [0, {self.slice_count})")
        first = self.start_year + index * self.width_years
        last = min(first + self.width_years - 1, self.end_year)
        return first, last

    def slice_label(self, index: int) -> str:
        first, last = self.slice_bounds(index)
        return f"{first}-{last}"

    def labels(self) -> list[str]:
        return [self.slice_label(k) for k in range(self.slice_count)]


def time_slice(config: TimeSliceConfig, year: int) -> int:
    """Functional form of TimeSliceConfig.slice_of."""
    return config.slice_of(year)


def parse_ngram_line(line: str, n: int = DEFAULT_N) -> NgramRecord:
    """Parse one TSV corpus line into an NgramRecord.

    Field 1 must split on single spaces into exactly n words; field 2 is the
    year, field 3 the positive count. Trailing TSV fields (e.g. volume counts)
    are ignored.

    Raises: WrongArity, MalformedYear, MalformedCount.
    """
    fields = line.rstrip("\n").rstrip("\r").split("\t")
    if len(fields) < 3:
        raise WrongArity(f"expected at least 3 tab-separated fields, got {len(fields)}")
    words = fields[0].split(" ")
    if len(words) != n or any(not w for w in words):
        raise WrongArity(f"expected {n} words, got {fields[0]!r}")
    try:
        year = int(fields[1])
    except ValueError as exc:
        raise MalformedYear(f"bad year field {fields[1]!r}") from exc
    try:
        count = int(fields[2])
    except ValueError as exc:
        raise MalformedCount(f"bad count field {fields[2]!r}") from exc
    if count < 1:
        raise MalformedCount(f"count must be >= 1, got {count}")
    return NgramRecord(words=tuple(words), year=year, count=count)


@dataclass
class IngestStats:
    """Per-run summary of what stream_corpus saw, filled as the stream is consumed."""

    lines: int = 0
    yielded: int = 0
    skipped_malformed: int = 0
    skipped_out_of_range: int = 0

    def summary(self) -> str:
        return (
            f"{self.lines} lines read, {self.yielded} records in range, "
            f"{self.skipped_malformed} malformed skipped, "
            f"{self.skipped_out_of_range} out-of-range skipped"
        )


Source = Union[str, Path, IO[str], IO[bytes], Iterable[str]]


def _open_source(source: Source) -> Iterable[str]:
    """Turn a path / byte stream / text stream into a line iterable.

    Paths and byte streams are sniffed for the gzip magic and decompressed
    transparently; text streams are used as-is.
    """
    if isinstance(source, (str, Path)):
        return _wrap_binary(open(source, "rb"))
    if isinstance(source, (io.RawIOBase, io.BufferedIOBase)):
        return _wrap_binary(source)  # type: ignore[arg-type]
    return source  # type: ignore[return-value]


def _wrap_binary(stream: IO[bytes]) -> Iterable[str]:
    buffered = stream if isinstance(stream, io.BufferedReader) else io.BufferedReader(stream)  # type: ignore[arg-type]
    if buffered.peek(2)[:2] == GZIP_MAGIC:
        return io.TextIOWrapper(gzip.GzipFile(fileobj=buffered), encoding="utf-8")
    return io.TextIOWrapper(buffered, encoding="utf-8")


def stream_corpus(
    sources: Iterable[Source],
    n: int = DEFAULT_N,
    config: Optional[TimeSliceConfig] = None,
    on_error: str = "skip",
    stats: Optional[IngestStats] = None,
) -> Iterator[tuple[int, NgramRecord]]:
    """Yield (slice index, record) for every parsable in-range line of every source.

    Under on_error="skip", malformed and out-of-range lines are counted in
    `stats` and skipped; under "abort" the first bad line raises. Records from
    a single source come out in source order.
    """
    if on_error not in ("skip", "abort"):
        raise ValueError(f"on_error must be 'skip' or 'abort', got {on_error!r}")
    cfg = config if config is not None else TimeSliceConfig()
    if stats is None:
        stats = IngestStats()
    for source in sources:
        for line in _open_source(source):
            if not line.strip():
                continue
            stats.lines += 1
            try:
                record = parse_ngram_line(line, n)
            except (WrongArity, MalformedYear, MalformedCount):
                if on_error == "abort":
                    raise
                stats.skipped_malformed += 1
                continue
            try:
                index = cfg.slice_of(record.year)
            except YearOutOfRange:
                if on_error == "abort":
                    raise
                stats.skipped_out_of_range += 1
                continue
            stats.yielded += 1
            yield index, record
