import logging
import math
from dataclasses import dataclass, field
from typing import Tuple, Sequence, List

import numpy as np
from skimage.feature import graycomatrix, graycoprops

from .errors import DataError
from .volume import SeismicSection, Point

logger = logging.getLogger(__name__)

Offset = Tuple[int, int]

# y grows downwards (time), so 45 degrees points up and to the right
DIRECTION_OFFSETS = {
    0: (1, 0),
    45: (1, -1),
    90: (0, -1),
    135: (-1, -1)
}


@dataclass(frozen=True)
class GlcmConfig:
    radius: int = 4
    levels: int = 32
    directions: Tuple[int, ...] = (0, 45, 90, 135)
    distances: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.radius < 1:
            raise ValueError(f"GLCM radius must be at least 1, got {self.radius}")
        if not 2 <= self.levels <= 256:
            raise ValueError(f"GLCM needs between 2 and 256 gray levels, got {self.levels}")
        if len(self.directions) == 0:
            raise ValueError("at least one GLCM direction is required")
        unknown = [d for d in self.directions if d not in DIRECTION_OFFSETS]
        if unknown:
            raise ValueError(f"unsupported GLCM directions: {unknown}")
        if len(self.distances) == 0:
            object.__setattr__(self, "distances", tuple(range(1, self.radius + 1)))
        bad = [d for d in self.distances if not 1 <= d <= self.radius]
        if bad:
            raise ValueError(f"GLCM distances must lie within 1..{self.radius}, got {bad}")

    @property
    def window(self) -> int:
        return 2 * self.radius + 1

    @property
    def offsets(self) -> List[Offset]:
        return [(DIRECTION_OFFSETS[direction][0] * distance, DIRECTION_OFFSETS[direction][1] * distance)
                for direction in self.directions for distance in self.distances]

    @property
    def offsets_count(self) -> int:
        return len(self.directions) * len(self.distances)


@dataclass(frozen=True)
class Glcm:
    matrix: np.ndarray
    offset: Offset


class ContrastMap:
    def __init__(self, grid: np.ndarray, normalized: bool, degenerate: bool = False):
        self.grid = grid
        self.normalized = normalized
        self.degenerate = degenerate

    @property
    def shape(self) -> Tuple[int, int]:
        return self.grid.shape

    def value_at(self, point: Point) -> float:
        return float(self.grid[point[0], point[1]])


def quantize_grid(grid: np.ndarray, levels: int) -> np.ndarray:
    if grid.size > 0 and (np.min(grid) < 0.0 or np.max(grid) > 1.0):
        raise DataError("unnormalized input: quantization requires values within [0, 1]")
    return np.minimum(np.floor(grid * levels), levels - 1).astype(np.int64)


def quantize(section: SeismicSection, levels: int) -> np.ndarray:
    if not section.normalized:
        raise DataError(f"unnormalized input: inline {section.inline_no} must be normalized first")
    return quantize_grid(section.grid, levels)


def _window_bounds(center: int, radius: int, size: int) -> Tuple[int, int]:
    return max(0, center - radius), min(size - 1, center + radius)


def glcm_at(levels: np.ndarray, center: Point, offset: Offset, radius: int,
            n_levels: int = None) -> Glcm:
    """Co-occurrence of ordered pairs ``(p, p + offset)`` inside the clipped window around ``center``.

    The window is handed to ``graycomatrix`` as an image of time rows and crossline columns.
    """
    if offset == (0, 0):
        raise ValueError("GLCM offset cannot be (0, 0)")
    if n_levels is None:
        n_levels = int(levels.max()) + 1
    dx, dy = offset
    x0, x1 = _window_bounds(center[0], radius, levels.shape[0])
    y0, y1 = _window_bounds(center[1], radius, levels.shape[1])
    image = np.ascontiguousarray(levels[x0:x1 + 1, y0:y1 + 1].T, dtype=np.uint8)
    matrix = graycomatrix(image, [math.hypot(dx, dy)], [math.atan2(dy, dx)], levels=n_levels,
                          symmetric=False, normed=True)
    return Glcm(matrix[:, :, 0, 0], offset)


def glcm_contrast(glcm: Glcm) -> float:
    return float(graycoprops(glcm.matrix[:, :, None, None], "contrast")[0, 0])


def _box_sums(values: np.ndarray, x_lo: np.ndarray, x_hi: np.ndarray,
              y_lo: np.ndarray, y_hi: np.ndarray) -> np.ndarray:
    table = np.zeros((values.shape[0] + 1, values.shape[1] + 1), dtype=values.dtype)
    table[1:, 1:] = values.cumsum(axis=0).cumsum(axis=1)
    x_lo, x_hi = x_lo[:, None], x_hi[:, None] + 1
    y_lo, y_hi = y_lo[None, :], y_hi[None, :] + 1
    return table[x_hi, y_hi] - table[x_lo, y_hi] - table[x_hi, y_lo] + table[x_lo, y_lo]


def offset_contrast(levels: np.ndarray, offset: Offset, radius: int) -> np.ndarray:
    """Contrast of the GLCM at ``offset`` for every pixel at once.

    The contrast of a GLCM equals the mean squared level difference over the pairs it counts,
    so the per-pixel value is a box sum of squared differences divided by the pair count.
    """
    width, height = levels.shape
    dx, dy = offset
    squared = np.zeros(levels.shape, dtype=np.int64)
    sx0, sx1 = max(0, -dx), width - max(0, dx)
    sy0, sy1 = max(0, -dy), height - max(0, dy)
    if sx1 > sx0 and sy1 > sy0:
        diff = levels[sx0:sx1, sy0:sy1] - levels[sx0 + dx:sx1 + dx, sy0 + dy:sy1 + dy]
        squared[sx0:sx1, sy0:sy1] = diff * diff

    xs, ys = np.arange(width), np.arange(height)
    x_lo = np.minimum(np.maximum(0, xs - radius) + max(0, -dx), width)
    x_hi = np.minimum(width - 1, xs + radius) - max(0, dx)
    y_lo = np.minimum(np.maximum(0, ys - radius) + max(0, -dy), height)
    y_hi = np.minimum(height - 1, ys + radius) - max(0, dy)
    x_count = np.maximum(0, x_hi - x_lo + 1)
    y_count = np.maximum(0, y_hi - y_lo + 1)
    x_hi = np.where(x_count > 0, x_hi, x_lo - 1)
    y_hi = np.where(y_count > 0, y_hi, y_lo - 1)

    sums = _box_sums(squared, x_lo, x_hi, y_lo, y_hi)
    counts = x_count[:, None] * y_count[None, :]
    result = np.zeros(levels.shape, dtype=np.float64)
    np.divide(sums, counts, out=result, where=counts > 0)
    return result


def raw_contrast(section: SeismicSection, config: GlcmConfig) -> np.ndarray:
    """Offset-averaged GLCM contrast before min-max scaling."""
    levels = quantize(section, config.levels)
    result = np.zeros(levels.shape, dtype=np.float64)
    weight = 1.0 / config.offsets_count
    for offset in config.offsets:
        result += weight * offset_contrast(levels, offset, config.radius)
    return result


def contrast_map(section: SeismicSection, config: GlcmConfig) -> ContrastMap:
    raw = raw_contrast(section, config)
    low, high = float(raw.min()), float(raw.max())
    if not high > low:
        logger.warning("inline %d has a degenerate contrast field, using an all-zero map",
                       section.inline_no)
        return ContrastMap(np.zeros(raw.shape), normalized=True, degenerate=True)
    return ContrastMap((raw - low) / (high - low), normalized=True)
