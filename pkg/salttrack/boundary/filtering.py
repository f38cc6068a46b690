from typing import Sequence, List, TypeVar

import numpy as np
from scipy.ndimage import median_filter

from ..errors import GeometryError, TrackingUnstableError

T = TypeVar("T")

DEFAULT_MEDIAN_WINDOW = 5
DEFAULT_REJECTION_PX = 3.0


def outlier_mask(offsets: Sequence[float], window: int = DEFAULT_MEDIAN_WINDOW,
                 rejection_px: float = DEFAULT_REJECTION_PX) -> np.ndarray:
    """``True`` for offsets within ``rejection_px`` of the sliding median around them."""
    offsets = np.asarray(offsets, dtype=np.float64)
    if offsets.size < window:
        raise GeometryError(f"median filtering needs at least {window} tracked points, got {offsets.size}")
    medians = median_filter(offsets, size=window, mode="nearest")
    return np.abs(offsets - medians) <= rejection_px


def filter_tracked_points(points: Sequence[T], offsets: Sequence[float],
                          window: int = DEFAULT_MEDIAN_WINDOW,
                          rejection_px: float = DEFAULT_REJECTION_PX) -> List[T]:
    """Drops points whose normal offset deviates from the local median offset.

    The offsets along the search normals form a 1-D signal in traversal order; removing more
    than half of it means the tracking went astray.
    """
    if len(points) != len(offsets):
        raise ValueError("every tracked point needs exactly one offset")
    mask = outlier_mask(offsets, window, rejection_px)
    removed = int(np.count_nonzero(~mask))
    if 2 * removed > len(points):
        raise TrackingUnstableError(removed, len(points))
    return [point for point, keep in zip(points, mask) if keep]
