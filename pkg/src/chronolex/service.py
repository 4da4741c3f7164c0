"""Query pipeline and HTTP facade over a loaded temporal index.

A query names up to 32 words. The service gathers their per-slice vectors,
projects all present (word, slice) points to 2D in one joint embedding,
quantizes to the pixel grid, rasterizes trajectories, and assembles a
deterministic response. The index is strictly read-only after startup, so
concurrent identical queries return identical bodies.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import (
    AllPointsMissing,
    BindFailure,
    ChronolexError,
    DuplicateWord,
    EmptyQuery,
)
from .mds import DistanceMatrix, PointKey, classical_mds, distance_matrix
from .temporal import TemporalIndex
from .trajectory import (
    DEFAULT_GRID,
    DEFAULT_MARGIN,
    GridPoint,
    Trajectory,
    build_trajectories,
    quantize,
)

MAX_QUERY_WORDS = 32


@dataclass(frozen=True)
class QueryRequest:
    """A validated projection request: 1..32 distinct non-blank words."""

    words: tuple[str, ...]
    grid: Optional[tuple[int, int]] = None
    include_frames: bool = False

    def __post_init__(self) -> None:
        if not self.words:
            raise EmptyQuery("query carries no words")
        for word in self.words:
            if not word.strip():
                raise EmptyQuery("query contains a blank word")
        if len(set(self.words)) != len(self.words):
            raise DuplicateWord("query words must be distinct")
        if len(self.words) > MAX_QUERY_WORDS:
            raise ValueError(
                f"query capped at {MAX_QUERY_WORDS} words, got {len(self.words)}"
            )


@dataclass(frozen=True)
class Diagnostics:
    eigenvalues: tuple[float, ...]
    stress: float
    stress_unordered: float
    excluded_points: int


@dataclass(frozen=True)
class QueryResponse:
    """Everything a client needs to draw and animate one query."""

    words: tuple[str, ...]
    slice_labels: tuple[str, ...]
    points: tuple[tuple[Optional[GridPoint], ...], ...]
    trajectories: Optional[tuple[Trajectory, ...]]
    diagnostics: Diagnostics


def gather_query_points(
    index: TemporalIndex, words: tuple[str, ...], normalize: bool = False
) -> tuple[list[tuple[PointKey, np.ndarray]], list[tuple[int, int]]]:
    """Collect present (word, slice) vectors in word-major order, plus the misses."""
    slice_count = index.config.slice_count
    points: list[tuple[PointKey, np.ndarray]] = []
    missing: list[tuple[int, int]] = []
    for word_index, word in enumerate(words):
        for slice_index in range(slice_count):
            vec = index.temporal_vector(slice_index, word)
            if vec is None:
                missing.append((word_index, slice_index))
                continue
            if normalize:
                norm = float(np.linalg.norm(vec))
                if norm > 0.0:
                    vec = vec / norm
            points.append((PointKey(word_index, slice_index), vec))
    return points, missing


def query_distance_matrix(
    index: TemporalIndex, words: tuple[str, ...], normalize: bool = False
) -> DistanceMatrix:
    """The joint distance matrix over a query's present points."""
    points, _ = gather_query_points(index, words, normalize)
    if not points:
        raise AllPointsMissing("no query word has data in any slice")
    return distance_matrix(points)


def run_query(
    index: TemporalIndex,
    request: QueryRequest,
    margin_fraction: float = DEFAULT_MARGIN,
    normalize: bool = False,
) -> QueryResponse:
    """Project, quantize, and rasterize one query. Deterministic per (index, request)."""
    points, missing = gather_query_points(index, request.words, normalize)
    if not points:
        raise AllPointsMissing("no query word has data in any slice")

    matrix = distance_matrix(points)
    projection = classical_mds(matrix)
    projection = dataclasses.replace(projection, missing=tuple(missing))

    grid = request.grid if request.grid is not None else DEFAULT_GRID
    quantized = quantize(projection.coords, grid, margin_fraction)
    k = len(request.words)
    slice_count = index.config.slice_count
    trajectories = build_trajectories(quantized, k, slice_count)

    grid_points: list[tuple[Optional[GridPoint], ...]] = []
    for word_index in range(k):
        row: list[Optional[GridPoint]] = []
        for slice_index in range(slice_count):
            row.append(quantized.get(PointKey(word_index, slice_index)))
        grid_points.append(tuple(row))

    diagnostics = Diagnostics(
        eigenvalues=tuple(float(v) for v in projection.eigenvalues),
        stress=projection.stress,
        stress_unordered=projection.stress / 2.0,
        excluded_points=len(missing),
    )
    return QueryResponse(
        words=request.words,
        slice_labels=tuple(index.config.labels()),
        points=tuple(grid_points),
        trajectories=tuple(trajectories) if request.include_frames else None,
        diagnostics=diagnostics,
    )


def response_to_dict(response: QueryResponse) -> dict:
    """QueryResponse as plain JSON-ready data; missing points become null."""
    trajectories = None
    if response.trajectories is not None:
        trajectories = [
            {
                "word": response.words[traj.word_index],
                "word_index": traj.word_index,
                "empty": traj.is_empty,
                "keyframes": [
                    {"slice": slice_index, "x": point.x, "y": point.y}
                    for slice_index, point in traj.keyframes
                ],
                "segment_offsets": list(traj.segment_offsets),
                "frames": [[point.x, point.y] for point in traj.frames],
            }
            for traj in response.trajectories
        ]
    return {
        "slice_labels": list(response.slice_labels),
        "points": [
            [[p.x, p.y] if p is not None else None for p in row]
            for row in response.points
        ],
        "trajectories": trajectories,
        "diagnostics": {
            "eigenvalues": list(response.diagnostics.eigenvalues),
            "stress": response.diagnostics.stress,
            "stress_unordered": response.diagnostics.stress_unordered,
            "excluded_points": response.diagnostics.excluded_points,
        },
    }


def response_to_json(response: QueryResponse) -> str:
    """Canonical compact JSON; the CLI and the HTTP endpoint both emit this."""
    return json.dumps(response_to_dict(response), separators=(",", ":"))


def index_meta(index: TemporalIndex) -> dict:
    return {
        "format_version": 1,
        "n": index.n,
        "operator": index.operator.value,
        "dim": index.dim,
        "dim_out": index.dim_out,
        "slices": {
            "start_year": index.config.start_year,
            "end_year": index.config.end_year,
            "width_years": index.config.width_years,
            "slice_count": index.config.slice_count,
        },
        "entry_count": len(index),
        "vocabulary_size": len(index.words),
    }


_PLACEHOLDER_PAGE = """<!doctype html>
<html><head><title>chronolex</title></head>
<body>
<h1>chronolex</h1>
<p>No UI bundle is configured. The JSON API lives under <code>/api/v1/</code>:</p>
<ul>
<li><code>GET /api/v1/meta</code></li>
<li><code>GET /api/v1/projection?words=a,b,c&amp;frames=true</code></li>
</ul>
</body></html>
"""


def create_app(index: TemporalIndex, ui_dir: Optional[str] = None):
    """FastAPI app over a read-only index; optionally serves a static UI at /."""
    from fastapi import FastAPI, Response

    app = FastAPI(title="chronolex", docs_url=None, redoc_url=None)

    def json_response(payload: str, status_code: int = 200) -> Response:
        return Response(
            content=payload, status_code=status_code, media_type="application/json"
        )

    def error_response(status_code: int, message: str) -> Response:
        return json_response(
            json.dumps({"detail": message}, separators=(",", ":")), status_code
        )

    @app.get("/api/v1/meta")
    def meta():
        return json_response(json.dumps(index_meta(index), separators=(",", ":")))

    @app.get("/api/v1/projection")
    def projection(words=None, frames="false"):
        if words is None or not words.strip():
            return error_response(400, "missing words parameter")
        frames_param = str(frames).lower()
        if frames_param not in ("true", "false", "1", "0"):
            return error_response(400, f"bad frames parameter {frames_param!r}")
        include_frames = frames_param in ("true", "1")
        try:
            query = QueryRequest(
                words=tuple(words.split(",")), include_frames=include_frames
            )
        except (EmptyQuery, DuplicateWord, ValueError) as exc:
            return error_response(400, str(exc))
        try:
            response = run_query(index, query)
        except AllPointsMissing as exc:
            return error_response(422, str(exc))
        except ChronolexError as exc:
            return error_response(400, str(exc))
        return json_response(response_to_json(response))

    ui_path = Path(ui_dir) if ui_dir else None
    if ui_path is not None and ui_path.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_path), html=True), name="ui")
    else:

        @app.get("/")
        def home():
            return Response(content=_PLACEHOLDER_PAGE, media_type="text/html")

    return app


def resolve_address(address: str) -> tuple[str, int]:
    """Split HOST:PORT, letting a non-empty CHRONOLEX_ADDR override it."""
    address = os.environ.get("CHRONOLEX_ADDR") or address
    host, _, port_text = address.rpartition(":")
    if not host or not port_text.isdigit():
        raise ValueError(f"address must be HOST:PORT, got {address!r}")
    return host, int(port_text)


def http_serve(
    index: TemporalIndex, address: str = "127.0.0.1:8000", ui_dir: Optional[str] = None
) -> None:
    """Serve the JSON API (and UI bundle, if any) until terminated.

    Raises BindFailure when the address cannot be bound at startup.
    """
    import socket

    import uvicorn

    host, port = resolve_address(address)
    try:
        probe = socket.create_server((host, port))
    except OSError as exc:
        raise BindFailure(f"cannot bind {host}:{port}: {exc}") from exc
    probe.close()
    app = create_app(index, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")
