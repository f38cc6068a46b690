from .curve import BoundaryCurve, order_boundary, normal_at, connect_points, simplify_chain, is_admissible
from .filtering import filter_tracked_points
from .similarity import SimilarityReport, discrete_frechet, similarity_index, mean_absolute_deviation
