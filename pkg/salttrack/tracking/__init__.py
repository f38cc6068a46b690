from .config import TrackerConfig, Variant
from .tensors import TensorPair
from .classifier import ClassifiedModel, classify_tensors, extract_patch_pair
from .localizer import TrackedBoundary, localize_tracked_point, track_section
from .volume_tracker import SectionResult, track_volume, tracked_boundaries
