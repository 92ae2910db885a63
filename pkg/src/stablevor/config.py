"""Tolerance and solver configuration.

All tolerances used anywhere in the package live in one record so that a run
is characterized by a single immutable object.  Absolute tolerances are in
world units; relative ones are scaled by the quantity they guard.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # Vertices closer than this are considered the same point (world units).
    eps_join: float = 1e-9
    # Unit vectors / normalized quantities must be exact to this.
    eps_unit: float = 1e-12
    # Radius root-finding stops below eps_radius_rel * instance_scale.
    eps_radius_rel: float = 1e-10
    # Area root-finding stops below eps_area_rel * appetite.
    eps_area_rel: float = 1e-9
    # Working bounding box: half_width = max pairwise site distance
    # + bbox_safety * 2 * sqrt(total_appetite / pi).
    bbox_safety: float = 2.0
    # Glue refuses to close gaps larger than gap_factor * eps_join.
    gap_factor: float = 10.0
    # Accept two-dimensional bisector ties instead of rejecting them.
    resolve_degenerate_bisectors: bool = False

    def eps_radius(self, instance_scale: float) -> float:
        return self.eps_radius_rel * max(instance_scale, 1.0)

    def eps_area(self, appetite: float) -> float:
        return self.eps_area_rel * max(appetite, 1e-30)


DEFAULT_TOL = Tolerances()
