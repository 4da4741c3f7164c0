"""Animation geometry: grid quantization and Bresenham frame sequences.

Projected 2D coordinates are fitted into an integer pixel grid (uniform scale,
centered, optional margin), then each word's per-slice keyframes are joined by
rasterized line segments so the animation advances one pixel step at a time.
Missing intermediate slices are bridged by a single straight segment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

from .errors import EmptyInput
from .mds import PointKey

DEFAULT_GRID = (1000, 1000)
DEFAULT_MARGIN = 0.05


class GridPoint(NamedTuple):
    x: int
    y: int


def _round_half_away(value: float) -> int:
    if value >= 0.0:
        return math.floor(value + 0.5)
    return math.ceil(value - 0.5)


def quantize(
    coords: Mapping[PointKey, Sequence[float]],
    grid: tuple[int, int] = DEFAULT_GRID,
    margin_fraction: float = DEFAULT_MARGIN,
) -> dict[PointKey, GridPoint]:
    """Fit the coordinate bounding box into the grid and round to pixels.

    The map is affine with a single uniform scale (aspect preserved) and the
    scaled box centered in the grid; margins shrink the usable area on every
    side. Rounding is half-away-from-zero. A single point, or a zero-diameter
    box, lands on the grid center.
    """
    if not coords:
        raise EmptyInput("no coordinates to quantize")
    width, height = grid
    if width < 2 or height < 2:
        raise ValueError(f"grid must be at least 2x2, got {grid}")
    if not 0.0 <= margin_fraction < 0.5:
        raise ValueError(f"margin_fraction must be in [0, 0.5), got {margin_fraction}")

    xs = [float(pair[0]) for pair in coords.values()]
    ys = [float(pair[1]) for pair in coords.values()]
    min_x, max_x = min(xs), max(xs)
    min_y, max_y = min(ys), max(ys)
    span_x = max_x - min_x
    span_y = max_y - min_y
    center_x = (min_x + max_x) / 2.0
    center_y = (min_y + max_y) / 2.0

    usable_w = width * (1.0 - 2.0 * margin_fraction)
    usable_h = height * (1.0 - 2.0 * margin_fraction)
    scales = []
    if span_x > 0.0:
        scales.append(usable_w / span_x)
    if span_y > 0.0:
        scales.append(usable_h / span_y)
    scale = min(scales) if scales else 0.0

    out: dict[PointKey, GridPoint] = {}
    for key, pair in coords.items():
        px = (float(pair[0]) - center_x) * scale + width / 2.0
        py = (float(pair[1]) - center_y) * scale + height / 2.0
        # Clamp keeps margin 0 edge points inside [0, size).
        x = min(max(_round_half_away(px), 0), width - 1)
        y = min(max(_round_half_away(py), 0), height - 1)
        out[key] = GridPoint(x, y)
    return out


def bresenham(p0: GridPoint, p1: GridPoint) -> list[GridPoint]:
    """Integer line rasterization over all octants, both endpoints included.

    Yields exactly max(|dx|, |dy|) + 1 points, monotone along the dominant
    axis. A decision variable of exactly zero takes no minor-axis step, which
    fixes the tie behavior and makes output bit-reproducible.
    """
    x0, y0 = p0
    x1, y1 = p1
    dx = abs(x1 - x0)
    dy = abs(y1 - y0)
    sx = 1 if x1 >= x0 else -1
    sy = 1 if y1 >= y0 else -1
    points: list[GridPoint] = []
    if dx >= dy:
        err = 2 * dy - dx
        y = y0
        for i in range(dx + 1):
            points.append(GridPoint(x0 + i * sx, y))
            if err > 0:
                y += sy
                err -= 2 * dx
            err += 2 * dy
    else:
        err = 2 * dx - dy
        x = x0
        for i in range(dy + 1):
            points.append(GridPoint(x, y0 + i * sy))
            if err > 0:
                x += sx
                err -= 2 * dy
            err += 2 * dx
    return points


@dataclass(frozen=True)
class Trajectory:
    """One word's animation path through its present slices.

    frames is the full rasterized pixel path; segment_offsets[j] is the frame
    index of keyframe j. A word with no present slice has empty keyframes and
    frames.
    """

    word_index: int
    keyframes: tuple[tuple[int, GridPoint], ...]
    frames: tuple[GridPoint, ...]
    segment_offsets: tuple[int, ...]

    @property
    def is_empty(self) -> bool:
        return not self.keyframes


def build_trajectories(
    quantized: Mapping[PointKey, GridPoint],
    k: int,
    slice_count: int,
) -> list[Trajectory]:
    """Assemble one Trajectory per word from its quantized keyframes.

    Keyframes are the word's present slices in ascending order; consecutive
    keyframes are joined by Bresenham segments with the duplicated junction
    point dropped. Gaps (missing intermediate slices) are bridged by a single
    segment. Absence of all slices yields an empty trajectory, not an error.
    """
    trajectories: list[Trajectory] = []
    for word_index in range(k):
        keyframes = [
            (slice_index, quantized[PointKey(word_index, slice_index)])
            for slice_index in range(slice_count)
            if PointKey(word_index, slice_index) in quantized
        ]
        if not keyframes:
            trajectories.append(
                Trajectory(word_index, (), (), ())
            )
            continue
        frames: list[GridPoint] = [keyframes[0][1]]
        offsets: list[int] = [0]
        for _, target in keyframes[1:]:
            segment = bresenham(frames[-1], target)
            frames.extend(segment[1:])
            offsets.append(len(frames) - 1)
        trajectories.append(
            Trajectory(
                word_index=word_index,
                keyframes=tuple(keyframes),
                frames=tuple(frames),
                segment_offsets=tuple(offsets),
            )
        )
    return trajectories
