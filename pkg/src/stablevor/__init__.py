"""Stable-matching Voronoi diagrams.

Size-constrained plane partitions: every site receives a region of prescribed
area (its appetite) and no site-point pair prefers each other over their
assignment.  The partition is built incrementally by committing one bounding
ball per step and glued into explicit faces with segment and arc edges.
"""

from .config import DEFAULT_TOL, Tolerances
from .geom import Arc, ArcSegBoundary, ConvexPolygon, Disk, HalfPlane, Point, Seg
from .instances import Instance, lower_bound_family, random_instance, two_site_fixture
from .metric import (Ball, MetricSpec, distance, euclidean, l1_metric,
                     linf_metric, polygonal, spokes)
from .regions import Region
from .solver import (Site, StableDiagram, area_residuals, count_complexity,
                     edge_residuals, sample_stability, solve)

__all__ = [
    "DEFAULT_TOL", "Tolerances",
    "Point", "Disk", "ConvexPolygon", "HalfPlane", "Seg", "Arc", "ArcSegBoundary",
    "MetricSpec", "Ball", "euclidean", "polygonal", "linf_metric", "l1_metric",
    "distance", "spokes", "Region",
    "Site", "StableDiagram", "solve",
    "area_residuals", "edge_residuals", "sample_stability", "count_complexity",
    "Instance", "random_instance", "two_site_fixture", "lower_bound_family",
]
