"""Classical (Torgerson) multidimensional scaling of (word, slice) points.

The distance matrix holds Euclidean distances between every pair of present
(word, slice) vectors. Projection squares it entrywise, double-centers it into
a Gram matrix, and reads 2D coordinates off the top eigenpairs. Negative
eigenvalues (floating-point noise on genuinely Euclidean input) are clamped to
zero. The residual squared-distance mismatch of the output is reported as a
stress diagnostic; the eigendecomposition itself minimizes strain, not stress,
so stress is a diagnostic rather than the optimized objective.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .errors import DimensionMismatch, EmptyInput, KeyMismatch, NumericalFailure


class PointKey(NamedTuple):
    """Identifies one (query word, time slice) point; word-major canonical order."""

    word_index: int
    slice_index: int

    def flat(self, slice_count: int) -> int:
        return self.word_index * slice_count + self.slice_index


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric pairwise Euclidean distances over the present points."""

    keys: tuple[PointKey, ...]
    flat: np.ndarray

    @property
    def size(self) -> int:
        return len(self.keys)


@dataclass(frozen=True)
class ProjectionResult:
    """2D coordinates per point plus eigenspectrum and stress diagnostics.

    eigenvalues holds the full descending spectrum of the centered matrix
    before clamping; stress is the sum over ordered point pairs of squared
    differences between output distances and the input distances.
    """

    coords: dict[PointKey, tuple[float, float]]
    eigenvalues: np.ndarray
    missing: tuple[tuple[int, int], ...]
    stress: float


def distance_matrix(
    points: Sequence[tuple[PointKey, np.ndarray]],
) -> DistanceMatrix:
    """Build the pairwise Euclidean distance matrix for the given points.

    Each unordered pair is computed once, so the result is exactly symmetric
    with a zero diagonal.
    """
    if not points:
        raise EmptyInput("no points")
    keys = tuple(key for key, _ in points)
    vectors = [np.asarray(vec, dtype=np.float64) for _, vec in points]
    length = len(vectors[0])
    for key, vec in zip(keys, vectors):
        if len(vec) != length:
            raise DimensionMismatch(
                f"vector for {key} has length {len(vec)}, expected {length}"
            )
    stacked = np.vstack(vectors)
    if len(points) == 1:
        flat = np.zeros((1, 1), dtype=np.float64)
    else:
        flat = squareform(pdist(stacked, metric="euclidean"))
    flat.setflags(write=False)
    return DistanceMatrix(keys=keys, flat=flat)


def classical_mds(A: DistanceMatrix, target_dim: int = 2) -> ProjectionResult:
    """Embed the points of a distance matrix into target_dim dimensions.

    Square entrywise, double-center (B = -1/2 J A^2 J with J = I - 11^T/m),
    take the top target_dim eigenpairs of B with eigenvalues clamped at zero,
    and scale eigenvectors by sqrt(eigenvalue). Each output axis is flipped if
    needed so its first nonzero loading is positive; axes beyond the number of
    positive eigenvalues are zero.
    """
    m = A.size
    if m == 0:
        raise EmptyInput("empty distance matrix")
    squared = np.asarray(A.flat, dtype=np.float64) ** 2
    centering = np.eye(m) - np.full((m, m), 1.0 / m)
    gram = -0.5 * centering @ squared @ centering
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(gram)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure("eigendecomposition did not converge") from exc
    order = np.argsort(eigenvalues)[::-1]
    eigenvalues = eigenvalues[order]
    eigenvectors = eigenvectors[:, order]

    coords = np.zeros((m, target_dim), dtype=np.float64)
    usable = min(target_dim, m)
    for axis in range(usable):
        lam = eigenvalues[axis]
        if lam <= 0.0:
            continue
        column = eigenvectors[:, axis] * np.sqrt(lam)
        nonzero = np.nonzero(column)[0]
        if nonzero.size and column[nonzero[0]] < 0.0:
            column = -column
        coords[:, axis] = column

    coord_map = {
        key: tuple(float(c) for c in coords[i]) for i, key in enumerate(A.keys)
    }
    stress = evaluate_stress(coord_map, A)
    eigenvalues.setflags(write=False)
    return ProjectionResult(
        coords=coord_map,
        eigenvalues=eigenvalues,
        missing=(),
        stress=stress,
    )


def evaluate_stress(
    coords: Mapping[PointKey, Sequence[float]], A: DistanceMatrix
) -> float:
    """Sum over all ordered point pairs of (output distance - input distance)^2.

    The unordered-pair value is exactly half of this.
    """
    if set(coords.keys()) != set(A.keys):
        raise KeyMismatch("coordinate keys differ from distance matrix keys")
    positions = np.array([coords[key] for key in A.keys], dtype=np.float64)
    if positions.shape[0] == 1:
        return 0.0
    out = squareform(pdist(positions, metric="euclidean"))
    residual = out - A.flat
    np.fill_diagonal(residual, 0.0)
    return float(np.sum(residual**2))
