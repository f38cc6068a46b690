import enum
from dataclasses import dataclass
from typing import List, Tuple, Iterable

import numpy as np

from .errors import DataError, NumericalError

Point = Tuple[int, int]


class ValueEncoding(enum.Enum):
    FLOAT32_LE = "float32-le"


@dataclass(frozen=True)
class VolumeHeader:
    inline_start: int
    inline_count: int
    crossline_start: int
    crossline_count: int
    time_start_ms: int
    time_step_ms: int
    time_count: int
    value_encoding: ValueEncoding = ValueEncoding.FLOAT32_LE

    def __post_init__(self):
        for name in ("inline_count", "crossline_count", "time_count"):
            if getattr(self, name) < 1:
                raise DataError(f"empty dimension: {name} = {getattr(self, name)}")
        if self.time_step_ms <= 0:
            raise DataError(f"time step must be positive, got {self.time_step_ms}")

    @property
    def shape(self) -> Tuple[int, int, int]:
        return self.inline_count, self.crossline_count, self.time_count

    @property
    def sample_count(self) -> int:
        return self.inline_count * self.crossline_count * self.time_count

    def offset(self, inline: int, crossline: int, time: int) -> int:
        """Linear sample offset of zero-based grid indices in the samples file."""
        return (inline * self.crossline_count + crossline) * self.time_count + time


class SeismicSection:
    """A 2D inline slice indexed as ``grid[x, y]``: x along crossline, y along time."""

    def __init__(self, inline_no: int, grid: np.ndarray, normalized: bool = False):
        if grid.ndim != 2:
            raise DataError(f"section grid must be two-dimensional, got {grid.ndim} dimensions")
        self.inline_no = inline_no
        self.grid = np.asarray(grid, dtype=np.float64)
        self.normalized = normalized

    @property
    def shape(self) -> Tuple[int, int]:
        return self.grid.shape

    def contains(self, point: Point) -> bool:
        x, y = point
        return 0 <= x < self.grid.shape[0] and 0 <= y < self.grid.shape[1]

    def __repr__(self) -> str:
        return f"SeismicSection(inline={self.inline_no}, shape={self.shape}, normalized={self.normalized})"


class SeismicVolume:
    def __init__(self, header: VolumeHeader, samples: np.ndarray):
        samples = np.asarray(samples, dtype=np.float32)
        if samples.size != header.sample_count:
            raise DataError(f"sample-count mismatch: header declares {header.sample_count} "
                            f"samples, got {samples.size}")
        self.header = header
        self.samples = samples.reshape(header.shape)
        self.samples.setflags(write=False)

    @property
    def inline_numbers(self) -> List[int]:
        start = self.header.inline_start
        return list(range(start, start + self.header.inline_count))

    def has_inline(self, inline_no: int) -> bool:
        return 0 <= inline_no - self.header.inline_start < self.header.inline_count

    def section(self, inline_no: int) -> SeismicSection:
        if not self.has_inline(inline_no):
            first, last = self.inline_numbers[0], self.inline_numbers[-1]
            raise DataError(f"inline {inline_no} is outside of the volume range {first}..{last}")
        index = inline_no - self.header.inline_start
        return SeismicSection(inline_no, self.samples[index].astype(np.float64))

    def __eq__(self, other) -> bool:
        return (isinstance(other, SeismicVolume) and self.header == other.header and
                self.samples.tobytes() == other.samples.tobytes())


class BoundaryRecord:
    def __init__(self, inline_no: int, points: Iterable[Point]):
        self.inline_no = inline_no
        self.points: List[Point] = [(int(x), int(y)) for x, y in points]
        if len(self.points) == 0:
            raise DataError(f"boundary of inline {inline_no} has no points")

    def check_bounds(self, shape: Tuple[int, int]) -> None:
        for x, y in self.points:
            if not (0 <= x < shape[0] and 0 <= y < shape[1]):
                raise DataError(f"boundary point ({x}, {y}) of inline {self.inline_no} is outside "
                                f"of the {shape[0]}x{shape[1]} section")

    def __eq__(self, other) -> bool:
        return (isinstance(other, BoundaryRecord) and other.inline_no == self.inline_no and
                other.points == self.points)

    def __repr__(self) -> str:
        return f"BoundaryRecord(inline={self.inline_no}, points={len(self.points)})"


def normalize_grid(grid: np.ndarray) -> np.ndarray:
    low, high = float(np.min(grid)), float(np.max(grid))
    if not high > low:
        raise NumericalError("degenerate range: the grid holds a single value")
    return (grid - low) / (high - low)


def normalize_section(section: SeismicSection) -> SeismicSection:
    """Per-section min-max scaling to [0, 1]."""
    return SeismicSection(section.inline_no, normalize_grid(section.grid), normalized=True)
