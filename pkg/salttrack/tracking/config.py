import enum
from dataclasses import dataclass, field
from typing import Tuple, Optional

from ..texture import GlcmConfig
from ..boundary.filtering import DEFAULT_MEDIAN_WINDOW, DEFAULT_REJECTION_PX
from ..boundary.curve import DEFAULT_NORMAL_WINDOW
from ..tensor.algebra import MODES


class Variant(enum.Enum):
    FULL = "full"
    NO_CONTRAST = "no_contrast"
    VECTORIZED = "vectorized"

    @property
    def uses_contrast(self) -> bool:
        return self != Variant.NO_CONTRAST

    @property
    def modes(self) -> Tuple[int, ...]:
        return (3,) if self == Variant.VECTORIZED else MODES


@dataclass(frozen=True)
class TrackerConfig:
    patch_dims: Tuple[int, int] = (31, 31)
    subspace_dims: Tuple[int, int, int] = (15, 15, 5)
    error_threshold: float = 3.0
    glcm: GlcmConfig = field(default_factory=GlcmConfig)
    variant: Variant = Variant.FULL
    contrast_floor: float = 1e-3
    median_window: int = DEFAULT_MEDIAN_WINDOW
    rejection_px: float = DEFAULT_REJECTION_PX
    normal_window: int = DEFAULT_NORMAL_WINDOW
    contrast_weight: Optional[float] = None
    chained: bool = False
    extended_scoring: bool = False

    def __post_init__(self):
        if any(d < 3 or d % 2 == 0 for d in self.patch_dims):
            raise ValueError(f"patch dimensions must be odd and at least 3, got {self.patch_dims}")
        if any(d < 1 for d in self.subspace_dims):
            raise ValueError(f"subspace dimensions must be positive, got {self.subspace_dims}")
        if not self.error_threshold > 0:
            raise ValueError(f"error threshold must be positive, got {self.error_threshold}")
        if not 0.0 < self.contrast_floor < 1.0:
            raise ValueError(f"contrast floor must lie in (0, 1), got {self.contrast_floor}")
        if self.median_window < 1 or self.median_window % 2 == 0:
            raise ValueError(f"median window must be a positive odd number, got {self.median_window}")
        if self.rejection_px < 0:
            raise ValueError(f"rejection distance cannot be negative, got {self.rejection_px}")
        if self.contrast_weight is not None and self.contrast_weight < 0:
            raise ValueError(f"contrast weight cannot be negative, got {self.contrast_weight}")

    def to_dict(self) -> dict:
        return {
            "patch_dims": list(self.patch_dims),
            "subspace_dims": list(self.subspace_dims),
            "error_threshold": self.error_threshold,
            "glcm": {
                "radius": self.glcm.radius,
                "levels": self.glcm.levels,
                "directions": list(self.glcm.directions),
                "distances": list(self.glcm.distances)
            },
            "variant": self.variant.value,
            "contrast_floor": self.contrast_floor,
            "median_window": self.median_window,
            "rejection_px": self.rejection_px,
            "normal_window": self.normal_window,
            "contrast_weight": self.contrast_weight,
            "chained": self.chained,
            "extended_scoring": self.extended_scoring
        }
