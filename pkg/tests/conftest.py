"""Shared fixtures and corpus synthesis helpers."""

from __future__ import annotations

import io

import numpy as np
import pytest

from chronolex.corpus import NgramRecord, TimeSliceConfig
from chronolex.embeddings import StaticEmbeddingTable


def make_table(vocab: list[str], dim: int, rng: np.random.Generator) -> StaticEmbeddingTable:
    """Random embeddings in [-1, 1]; keeps float32 cast error well under 1e-6."""
    entries = {}
    for word in vocab:
        vec = rng.uniform(-1.0, 1.0, size=dim)
        vec.setflags(write=False)
        entries[word] = vec
    unknown = np.zeros(dim)
    unknown.setflags(write=False)
    return StaticEmbeddingTable(dim=dim, entries=entries, unknown_vector=unknown)


def random_corpus(
    rng: np.random.Generator,
    n_records: int,
    vocab: list[str],
    config: TimeSliceConfig,
    n: int = 5,
    max_count: int = 20,
) -> list[tuple[int, NgramRecord]]:
    """Random (slice, record) pairs over the given vocabulary and year range."""
    out = []
    years = np.arange(config.start_year, config.end_year + 1)
    for _ in range(n_records):
        words = tuple(vocab[i] for i in rng.integers(0, len(vocab), size=n))
        year = int(rng.choice(years))
        count = int(rng.integers(1, max_count + 1))
        record = NgramRecord(words=words, year=year, count=count)
        out.append((config.slice_of(year), record))
    return out


@pytest.fixture
def tiny_table() -> StaticEmbeddingTable:
    """The 1-D table used by the context-combination examples."""
    entries = {
        "a": np.array([1.0]),
        "b": np.array([2.0]),
        "d": np.array([3.0]),
        "e": np.array([4.0]),
    }
    return StaticEmbeddingTable(dim=1, entries=entries, unknown_vector=np.zeros(1))


def embeddings_stream(text: str) -> io.StringIO:
    return io.StringIO(text)


def write_toy_dataset(root) -> dict:
    """Write a small embeddings file and a corpus spanning the default
    1800-2008 config, with three query words of differing coverage."""
    rng = np.random.default_rng(2024)
    context = [f"c{i}" for i in range(8)]
    lines = [f"{w} " + " ".join(f"{v:.4f}" for v in rng.uniform(-1, 1, 3)) for w in context]
    vec_path = root / "toy.vec"
    vec_path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    config = TimeSliceConfig()
    corpus_lines = []
    for slice_index in range(config.slice_count):
        year = 1800 + slice_index * 5
        for middle, group in (("gay", context[:4]), ("happy", context[4:])):
            for _ in range(3):
                ctx = rng.choice(group, size=4)
                words = [ctx[0], ctx[1], middle, ctx[2], ctx[3]]
                count = int(rng.integers(1, 5))
                corpus_lines.append(f"{' '.join(words)}\t{year}\t{count}")
    # "cat" appears only in the first three slices
    for year in (1801, 1806, 1811):
        corpus_lines.append(f"c0 c1 cat c2 c3\t{year}\t2")
    tsv_path = root / "toy.tsv"
    tsv_path.write_text("\n".join(corpus_lines) + "\n", encoding="utf-8")
    return {"embeddings": vec_path, "ngrams": tsv_path, "config": config}


@pytest.fixture(scope="session")
def toy_dataset(tmp_path_factory):
    root = tmp_path_factory.mktemp("toy")
    return write_toy_dataset(root)


@pytest.fixture(scope="session")
def toy_index_dir(toy_dataset, tmp_path_factory):
    from chronolex.cli import cli_main

    out = tmp_path_factory.mktemp("idx") / "toy-index"
    code = cli_main(
        [
            "ingest",
            "--ngrams", str(toy_dataset["ngrams"]),
            "--embeddings", str(toy_dataset["embeddings"]),
            "--out", str(out),
            "--operator", "sum",
        ]
    )
    assert code == 0
    return out
