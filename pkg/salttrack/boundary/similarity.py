from dataclasses import dataclass, field
from typing import List, Dict, Any, Union

import numpy as np
from scipy.spatial.distance import cdist

from .curve import BoundaryCurve
from ..errors import GeometryError

DEFAULT_SEGMENTS = 10

Polyline = Union[BoundaryCurve, np.ndarray, List]


def _as_array(polyline: Polyline) -> np.ndarray:
    if isinstance(polyline, BoundaryCurve):
        return polyline.as_array()
    return np.asarray(polyline, dtype=np.float64).reshape(-1, 2)


def discrete_frechet(first: Polyline, second: Polyline) -> float:
    """Discrete Frechet distance by the coupling-table recurrence."""
    first, second = _as_array(first), _as_array(second)
    if len(first) == 0 or len(second) == 0:
        raise ValueError("Frechet distance is undefined for empty polylines")
    dist = cdist(first, second)
    p, q = dist.shape
    table = np.empty((p, q))
    table[0, 0] = dist[0, 0]
    for i in range(1, p):
        table[i, 0] = max(table[i - 1, 0], dist[i, 0])
    for j in range(1, q):
        table[0, j] = max(table[0, j - 1], dist[0, j])
    for i in range(1, p):
        for j in range(1, q):
            table[i, j] = max(min(table[i - 1, j], table[i, j - 1], table[i - 1, j - 1]), dist[i, j])
    return float(table[-1, -1])


@dataclass
class SimilarityReport:
    mean_segment_frechet: float
    similarity_index: float
    per_segment: List[float] = field(default_factory=list)
    segment_length: float = 1.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mean_segment_frechet": self.mean_segment_frechet,
            "similarity_index": self.similarity_index,
            "per_segment": list(self.per_segment),
            "segment_length": self.segment_length
        }


def split_by_arc_length(polyline: Polyline, segments: int) -> List[np.ndarray]:
    """Splits a polyline at the vertices nearest to ``segments`` equal arc-length steps.

    Neighbouring segments share their split vertex.
    """
    points = _as_array(polyline)
    if segments < 1 or len(points) < segments:
        raise GeometryError(f"degenerate segmentation: {len(points)} points cannot form {segments} segments")
    arc = np.concatenate([[0.0], np.cumsum(np.linalg.norm(np.diff(points, axis=0), axis=1))])
    if arc[-1] == 0.0:
        raise GeometryError("degenerate segmentation: the curve has zero length")
    marks = np.linspace(0.0, arc[-1], segments + 1)
    indices = np.searchsorted(arc, marks)
    indices = np.clip(indices, 0, len(points) - 1)
    lower = np.clip(indices - 1, 0, len(points) - 1)
    closer_below = np.abs(arc[lower] - marks) <= np.abs(arc[indices] - marks)
    indices = np.where(closer_below, lower, indices)
    return [points[indices[k]:indices[k + 1] + 1] for k in range(segments)]


def arc_length(polyline: Polyline) -> float:
    return float(np.sum(np.linalg.norm(np.diff(_as_array(polyline), axis=0), axis=1)))


def similarity_index(tracked: Polyline, truth: Polyline, segments: int = DEFAULT_SEGMENTS) -> SimilarityReport:
    """Similarity of two curves cut into ``segments`` pieces of equal arc length.

    The mean Frechet distance between corresponding pieces is measured in lengths of a
    ground-truth piece, so the index does not depend on the scale of the section.
    """
    tracked_parts = split_by_arc_length(tracked, segments)
    truth_parts = split_by_arc_length(truth, segments)
    per_segment = [discrete_frechet(a, b) for a, b in zip(tracked_parts, truth_parts)]
    mean = float(np.mean(per_segment))
    segment_length = arc_length(truth) / segments
    return SimilarityReport(mean, 1.0 / (1.0 + mean / segment_length), per_segment, segment_length)


def mean_absolute_deviation(tracked: Polyline, truth: Polyline) -> float:
    """Mean distance from each tracked vertex to the nearest ground-truth vertex."""
    return float(np.mean(cdist(_as_array(tracked), _as_array(truth)).min(axis=1)))
