from typing import List, Tuple, Iterable, Sequence, Union, Set

import numpy as np
from skimage.draw import line

from ..errors import GeometryError, NumericalError
from ..volume import Point

# clockwise from 12 o'clock; y grows downwards
NEIGHBOR_PRIORITY: List[Tuple[int, int]] = [
    (0, -1),   # up
    (1, -1),   # up-right
    (1, 0),    # right
    (1, 1),    # down-right
    (0, 1),    # down
    (-1, 1),   # down-left
    (-1, 0),   # left
    (-1, -1),  # up-left
]

DEFAULT_NORMAL_WINDOW = 5


class BoundaryCurve:
    def __init__(self, points: Iterable[Point], closed: bool = False):
        self.points: List[Point] = [(int(x), int(y)) for x, y in points]
        for first, second in zip(self.points, self.points[1:]):
            if first == second:
                raise GeometryError(f"duplicate consecutive point {first} in a boundary curve")
        self.closed = closed

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, index: int) -> Point:
        return self.points[index]

    def __eq__(self, other) -> bool:
        return isinstance(other, BoundaryCurve) and self.points == other.points and self.closed == other.closed

    def __repr__(self) -> str:
        return f"BoundaryCurve(points={len(self.points)}, closed={self.closed})"

    def as_array(self) -> np.ndarray:
        return np.array(self.points, dtype=np.float64).reshape(-1, 2)

    def is_connected(self) -> bool:
        return all(max(abs(x1 - x2), abs(y1 - y2)) == 1
                   for (x1, y1), (x2, y2) in zip(self.points, self.points[1:]))


def is_admissible(point: Point, patch_dims: Tuple[int, int], section_dims: Tuple[int, int]) -> bool:
    """Whether a patch centred at ``point`` lies entirely inside the section."""
    half_x, half_y = patch_dims[0] // 2, patch_dims[1] // 2
    x, y = point
    return (half_x <= x < section_dims[0] - half_x and
            half_y <= y < section_dims[1] - half_y)


def start_point(points: Iterable[Point]) -> Point:
    """Bottom-left point: largest time index, then smallest crossline."""
    return min(points, key=lambda p: (-p[1], p[0]))


def _neighbor_count(point: Point, points: Set[Point]) -> int:
    return sum((point[0] + dx, point[1] + dy) in points for dx, dy in NEIGHBOR_PRIORITY)


def order_boundary(raw_points: Iterable[Point], patch_dims: Tuple[int, int],
                   section_dims: Tuple[int, int]) -> BoundaryCurve:
    """Orders a set of boundary pixels into a chain by walking 8-neighbours clockwise.

    The walk starts at the bottom-left end of an open chain, a pixel with at most one neighbour.
    A set without ends starts at its bottom-left pixel.
    """
    remaining: Set[Point] = {(int(x), int(y)) for x, y in raw_points
                             if is_admissible((int(x), int(y)), patch_dims, section_dims)}
    if len(remaining) == 0:
        raise GeometryError("no admissible start point: every boundary point is too close to the border "
                            f"for {patch_dims[0]}x{patch_dims[1]} patches")

    ends = [point for point in remaining if _neighbor_count(point, remaining) <= 1]
    current = start_point(ends if ends else remaining)
    remaining.remove(current)
    ordered = [current]
    while remaining:
        for dx, dy in NEIGHBOR_PRIORITY:
            candidate = (current[0] + dx, current[1] + dy)
            if candidate in remaining:
                break
        else:
            raise GeometryError(f"disconnected input: {len(remaining)} boundary points cannot be "
                                f"reached from {current}")
        remaining.remove(candidate)
        ordered.append(candidate)
        current = candidate
    return BoundaryCurve(ordered)


def simplify_chain(points: Sequence[Point]) -> List[Point]:
    """Thins an ordered chain of pixels into a minimal 8-connected path.

    Consecutive duplicates are dropped and a pixel is removed while its two neighbours in the
    chain are themselves 8-neighbours.
    """
    result: List[Point] = []
    for point in points:
        point = (int(point[0]), int(point[1]))
        if result and result[-1] == point:
            continue
        result.append(point)
        while len(result) >= 3:
            (x1, y1), (x2, y2) = result[-3], result[-1]
            if max(abs(x1 - x2), abs(y1 - y2)) > 1:
                break
            del result[-2]
    return result


def normal_at(curve: Union[BoundaryCurve, np.ndarray], index: int,
              window: int = DEFAULT_NORMAL_WINDOW, closed: bool = False) -> np.ndarray:
    """Unit normal from a total least-squares tangent over ``index - window .. index + window``.

    The window is clipped at the ends of an open curve and wraps around a closed one.
    """
    if isinstance(curve, BoundaryCurve):
        points, closed = curve.as_array(), curve.closed or closed
    else:
        points = np.asarray(curve, dtype=np.float64).reshape(-1, 2)
    if len(points) < 2:
        raise GeometryError("a normal needs a curve of at least two points")
    if closed:
        neighborhood = points[np.arange(index - window, index + window + 1) % len(points)]
    else:
        neighborhood = points[max(0, index - window):min(len(points), index + window + 1)]
    centered = neighborhood - neighborhood.mean(axis=0)
    _, sigma, vt = np.linalg.svd(centered, full_matrices=False)
    if sigma[0] == 0.0:
        raise NumericalError(f"zero-length tangent at curve point {index}")
    tangent = vt[0]
    if np.dot(tangent, neighborhood[-1] - neighborhood[0]) < 0:
        tangent = -tangent
    return np.array([-tangent[1], tangent[0]])


def rasterize_segment(start: Point, end: Point) -> List[Point]:
    xs, ys = line(int(start[0]), int(start[1]), int(end[0]), int(end[1]))
    return list(zip(xs.tolist(), ys.tolist()))


def connect_points(points: Sequence[Point]) -> BoundaryCurve:
    """Bridges gaps between consecutive points with straight raster segments.

    A pixel reached a second time closes a loop, which is cut back to its first visit; the result
    is then thinned with ``simplify_chain``.
    """
    if len(points) < 2:
        raise GeometryError("at least two points are required to connect a boundary")
    first = (int(points[0][0]), int(points[0][1]))
    path: List[Point] = [first]
    visited = {first: 0}
    for start, end in zip(points, points[1:]):
        for point in rasterize_segment(start, end)[1:]:
            if point in visited:
                for dropped in path[visited[point] + 1:]:
                    del visited[dropped]
                del path[visited[point] + 1:]
            else:
                visited[point] = len(path)
                path.append(point)
    return BoundaryCurve(simplify_chain(path))
