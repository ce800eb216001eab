"""Time-convex hulls of first-quadrant point sets with two orthogonal
highways along the coordinate axes."""

from .assembly import Axis, TimeConvexHull
from .geometry import HighwayConfig, Metric, in_walking_region, time_distance
from .oracle import oracle_clusters
from .pipeline import HullResult, time_convex_hull

__all__ = [
    "Axis", "HighwayConfig", "HullResult", "Metric", "TimeConvexHull",
    "in_walking_region", "oracle_clusters", "time_convex_hull", "time_distance",
]
__version__ = "0.1.0"
