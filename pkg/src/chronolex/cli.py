"""Command line entry points: ingest, query, export-distances, serve.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .corpus import IngestStats, TimeSliceConfig, stream_corpus
from .embeddings import load_static_embeddings
from .errors import ChronolexError, DuplicateWord, EmptyQuery
from .service import (
    QueryRequest,
    QueryResponse,
    http_serve,
    query_distance_matrix,
    response_to_json,
    run_query,
)
from .temporal import ContextOperator, build_temporal_index, load_index, save_index
from .trajectory import DEFAULT_GRID

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

SVG_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage failures map to exit code 1."""

    def error(self, message: str):  # noqa: D102 - argparse hook
        raise _UsageError(message)


def _parse_grid(text: str) -> tuple[int, int]:
    width, sep, height = text.lower().partition("x")
    if not sep or not width.isdigit() or not height.isdigit():
        raise _UsageError(f"--grid must be WIDTHxHEIGHT, got {text!r}")
    if int(width) < 2 or int(height) < 2:
        raise _UsageError(f"--grid must be at least 2x2, got {text!r}")
    return int(width), int(height)


def _build_parser() -> _Parser:
    parser = _Parser(prog="chronolex")
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="build an index from a corpus and embeddings")
    ingest.add_argument("--ngrams", nargs="+", required=True, metavar="FILE",
                        help="corpus TSV files (optionally gzipped)")
    ingest.add_argument("--embeddings", required=True, metavar="FILE")
    ingest.add_argument("--out", required=True, metavar="DIR")
    ingest.add_argument("--operator", choices=["sum", "concat"], default="sum")
    ingest.add_argument("--n", type=int, default=5)
    ingest.add_argument("--unknown-token", default=None)
    ingest.add_argument("--slice-start", type=int, default=1800)
    ingest.add_argument("--slice-end", type=int, default=2008)
    ingest.add_argument("--slice-width", type=int, default=5)
    ingest.add_argument("--on-error", choices=["skip", "abort"], default="skip")

    query = sub.add_parser("query", help="project query words and print the result")
    query.add_argument("--index", required=True, metavar="DIR")
    query.add_argument("--words", required=True, help="comma-separated query words")
    query.add_argument("--format", choices=["json", "csv", "svg"], default="json")
    query.add_argument("--frames", action="store_true",
                       help="include rasterized frame lists in JSON output")
    query.add_argument("--grid", type=str, default=None, metavar="WxH")
    query.add_argument("--normalize", action="store_true",
                       help="length-normalize vectors before distances (experiment)")

    export = sub.add_parser("export-distances", help="dump the query distance matrix as TSV")
    export.add_argument("--index", required=True, metavar="DIR")
    export.add_argument("--words", required=True)
    export.add_argument("--normalize", action="store_true")

    serve = sub.add_parser("serve", help="serve the HTTP API (and UI bundle)")
    serve.add_argument("--index", required=True, metavar="DIR")
    serve.add_argument("--addr", default="127.0.0.1:8000",
                       help="HOST:PORT (CHRONOLEX_ADDR overrides)")
    serve.add_argument("--ui", default=None, metavar="DIR",
                       help="static UI bundle directory to serve at /")
    return parser


def _split_words(raw: str) -> tuple[str, ...]:
    return tuple(w for w in raw.split(","))


def _cmd_ingest(args: argparse.Namespace) -> int:
    if args.n < 1 or args.n % 2 == 0:
        raise _UsageError(f"--n must be a positive odd integer, got {args.n}")
    config = TimeSliceConfig(
        start_year=args.slice_start,
        end_year=args.slice_end,
        width_years=args.slice_width,
    )
    table = load_static_embeddings(args.embeddings, unknown_token=args.unknown_token)
    stats = IngestStats()
    records = stream_corpus(
        args.ngrams, n=args.n, config=config, on_error=args.on_error, stats=stats
    )
    index = build_temporal_index(
        records, table, ContextOperator(args.operator), config, n=args.n
    )
    save_index(index, args.out)
    print(
        f"indexed {len(index)} (slice, word) entries into {args.out} ({stats.summary()})",
        file=sys.stderr,
    )
    return EXIT_OK


def _response_to_csv(response: QueryResponse) -> str:
    lines = ["word,slice,label,x,y"]
    for word_index, word in enumerate(response.words):
        for slice_index, label in enumerate(response.slice_labels):
            point = response.points[word_index][slice_index]
            if point is None:
                lines.append(f"{word},{slice_index},{label},,")
            else:
                lines.append(f"{word},{slice_index},{label},{point.x},{point.y}")
    return "\n".join(lines) + "\n"


def _response_to_svg(response: QueryResponse, grid: tuple[int, int]) -> str:
    width, height = grid
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" '
        f'width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for word_index, word in enumerate(response.words):
        color = SVG_PALETTE[word_index % len(SVG_PALETTE)]
        keyframes = [
            (slice_index, point)
            for slice_index, point in enumerate(response.points[word_index])
            if point is not None
        ]
        if not keyframes:
            continue
        if len(keyframes) > 1:
            coords = " ".join(f"{p.x},{height - p.y}" for _, p in keyframes)
            parts.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="2"/>'
            )
        for slice_index, point in keyframes:
            parts.append(
                f'<circle cx="{point.x}" cy="{height - point.y}" r="5" fill="{color}">'
                f"<title>{word} {response.slice_labels[slice_index]}</title></circle>"
            )
        last = keyframes[-1][1]
        parts.append(
            f'<text x="{last.x + 8}" y="{height - last.y}" font-size="16" '
            f'fill="{color}">{word}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _cmd_query(args: argparse.Namespace) -> int:
    index = load_index(args.index)
    grid = _parse_grid(args.grid) if args.grid else None
    try:
        request = QueryRequest(
            words=_split_words(args.words),
            grid=grid,
            include_frames=args.frames,
        )
    except (EmptyQuery, DuplicateWord, ValueError) as exc:
        raise _UsageError(str(exc)) from exc
    response = run_query(index, request, normalize=args.normalize)
    if args.format == "json":
        print(response_to_json(response))
    elif args.format == "csv":
        sys.stdout.write(_response_to_csv(response))
    else:
        sys.stdout.write(_response_to_svg(response, grid or DEFAULT_GRID))
    return EXIT_OK


def _cmd_export_distances(args: argparse.Namespace) -> int:
    index = load_index(args.index)
    words = _split_words(args.words)
    request = QueryRequest(words=words)  # reuse the validation rules
    matrix = query_distance_matrix(index, request.words, normalize=args.normalize)
    header = "\t".join(f"{words[key.word_index]}@{key.slice_index}" for key in matrix.keys)
    out = [header]
    for row in matrix.flat:
        out.append("\t".join(repr(float(v)) for v in row))
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    index = load_index(args.index)
    http_serve(index, address=args.addr, ui_dir=args.ui)
    return EXIT_OK


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "ingest":
            return _cmd_ingest(args)
        if args.command == "query":
            return _cmd_query(args)
        if args.command == "export-distances":
            return _cmd_export_distances(args)
        if args.command == "serve":
            return _cmd_serve(args)
        raise _UsageError(f"unknown command {args.command!r}")
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except (ChronolexError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(cli_main())
