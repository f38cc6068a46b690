from pathlib import Path
from typing import Sequence, Tuple, Union, Optional, List

import numpy as np
from matplotlib import colormaps

from ..boundary.curve import rasterize_segment
from ..errors import NumericalError, DataError
from ..volume import Point, normalize_grid

Color = Tuple[int, int, int]
PathLike = Union[str, Path]

COLORMAPS = ("gray", "jet", "seismic")


def grid_image(grid: np.ndarray, colormap: str = "gray") -> np.ndarray:
    """RGB image of a ``grid[x, y]``: rows run along time, columns along crosslines.

    Values are scaled to [0, 1] and looked up in a matplotlib colormap; a constant grid renders
    as the low end of the colormap.
    """
    if colormap not in COLORMAPS:
        raise ValueError(f"unknown colormap '{colormap}'")
    try:
        values = normalize_grid(np.asarray(grid, dtype=np.float64))
    except NumericalError:
        values = np.zeros(np.shape(grid))
    rgba = colormaps[colormap](values.T, bytes=True)
    return np.ascontiguousarray(rgba[:, :, :3])


def burn_curve(image: np.ndarray, points: Sequence[Point], color: Color) -> None:
    """Draws the polyline through ``points`` onto ``image`` in place, clipping at the border."""
    height, width = image.shape[:2]
    pixels: List[Point] = list(points[:1])
    for start, end in zip(points, points[1:]):
        pixels.extend(rasterize_segment(start, end)[1:])
    for x, y in pixels:
        if 0 <= x < width and 0 <= y < height:
            image[y, x] = color


def write_ppm(image: np.ndarray, path: PathLike) -> None:
    height, width = image.shape[:2]
    header = f"P6\n{width} {height}\n255\n".encode("ascii")
    Path(path).write_bytes(header + np.ascontiguousarray(image, dtype=np.uint8).tobytes())


def read_ppm(path: PathLike) -> np.ndarray:
    data = Path(path).read_bytes()
    parts = data.split(maxsplit=4)
    if len(parts) < 5 or parts[0] != b"P6" or parts[3] != b"255":
        raise DataError(f"{path} is not an 8-bit binary PPM image")
    width, height = int(parts[1]), int(parts[2])
    pixels = np.frombuffer(data[len(data) - width * height * 3:], dtype=np.uint8)
    return pixels.reshape(height, width, 3)


def svg_overlay(shape: Tuple[int, int], curves: Sequence[Tuple[Sequence[Point], Color]],
                background: Optional[str] = None) -> str:
    """SVG document of polylines over a ``shape = (crosslines, time samples)`` canvas."""
    width, height = shape
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
             f'viewBox="0 0 {width} {height}">']
    if background is not None:
        lines.append(f'  <image href="{background}" x="0" y="0" width="{width}" height="{height}"/>')
    for points, color in curves:
        coordinates = " ".join(f"{x},{y}" for x, y in points)
        stroke = "#{:02x}{:02x}{:02x}".format(*color)
        lines.append(f'  <polyline points="{coordinates}" fill="none" stroke="{stroke}" stroke-width="1"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(shape: Tuple[int, int], curves: Sequence[Tuple[Sequence[Point], Color]], path: PathLike,
              background: Optional[str] = None) -> None:
    Path(path).write_text(svg_overlay(shape, curves, background))
