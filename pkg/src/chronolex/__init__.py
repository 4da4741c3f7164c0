"""chronolex: temporal word embeddings with 2D trajectory projection.

Pipeline: a static word embedding table plus a timestamped n-gram corpus are
aggregated into per-(time slice, word) vectors; query words are jointly
embedded in 2D by classical multidimensional scaling; per-word paths through
the slices are rasterized for animation and served over CLI or HTTP.
"""

from .corpus import NgramRecord, TimeSliceConfig, parse_ngram_line, stream_corpus, time_slice
from .embeddings import StaticEmbeddingTable, load_static_embeddings
from .mds import (
    DistanceMatrix,
    PointKey,
    ProjectionResult,
    classical_mds,
    distance_matrix,
    evaluate_stress,
)
from .service import QueryRequest, QueryResponse, create_app, http_serve, run_query
from .temporal import (
    ContextOperator,
    TemporalIndex,
    build_temporal_index,
    combine_context,
    load_index,
    save_index,
    temporal_vector,
)
from .trajectory import GridPoint, Trajectory, bresenham, build_trajectories, quantize

__version__ = "0.1.0"

__all__ = [
    "ContextOperator",
    "DistanceMatrix",
    "GridPoint",
    "NgramRecord",
    "PointKey",
    "ProjectionResult",
    "QueryRequest",
    "QueryResponse",
    "StaticEmbeddingTable",
    "TemporalIndex",
    "Trajectory",
    "TimeSliceConfig",
    "bresenham",
    "build_temporal_index",
    "build_trajectories",
    "classical_mds",
    "combine_context",
    "create_app",
    "distance_matrix",
    "evaluate_stress",
    "http_serve",
    "load_index",
    "load_static_embeddings",
    "parse_ngram_line",
    "quantize",
    "run_query",
    "save_index",
    "stream_corpus",
    "temporal_vector",
    "time_slice",
]
