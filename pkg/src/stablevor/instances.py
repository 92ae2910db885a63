"""Instance constructors: random ensembles and structured families."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import BOutOfRange, GenerationFailure
from .geom import Point
from .metric import EUCLIDEAN, MetricSpec, _degenerate_pair, euclidean
from .solver import Site


@dataclass(frozen=True)
class Instance:
    metric: MetricSpec
    sites: tuple

    @property
    def n(self) -> int:
        return len(self.sites)

    def total_appetite(self) -> float:
        return sum(s.appetite for s in self.sites)


def random_instance(n: int, appetite=(0.3, 1.5), seed=None,
                    spread: float = None, metric: MetricSpec = None,
                    min_sep: float = None,
                    tol: Tolerances = DEFAULT_TOL) -> Instance:
    """Uniform sites in a spread-by-spread square, appetites uniform in the
    given range (or constant if a scalar).

    Sites closer than min_sep (default spread/(10 n)) to an accepted site
    are resampled, as are pairs whose direction parallels a unit-ball edge
    under a polygonal metric (those tie loci are two-dimensional and the
    solver refuses them).  Raises GenerationFailure when rejection stalls.
    """
    if n < 1:
        raise GenerationFailure("need at least one site")
    rng = np.random.default_rng(seed)
    if metric is None:
        metric = euclidean()
    if spread is None:
        spread = 2.0 * math.sqrt(n)
    half = 0.5 * spread
    if min_sep is None:
        min_sep = spread / (10.0 * n)
    pts: list[Point] = []
    tries = 0
    limit = 2000 * n
    while len(pts) < n:
        tries += 1
        if tries > limit:
            raise GenerationFailure(
                f"rejection sampling stalled after {limit} tries "
                f"(n={n}, min_sep={min_sep:.3g})")
        x, y = rng.uniform(-half, half, 2)
        cand = Point(float(x), float(y))
        ok = True
        for p in pts:
            if math.hypot(p.x - cand.x, p.y - cand.y) < min_sep:
                ok = False
                break
            if metric.kind != EUCLIDEAN and _degenerate_pair(metric, p, cand, tol):
                ok = False
                break
        if ok:
            pts.append(cand)
    if np.isscalar(appetite):
        apps = np.full(n, float(appetite))
    else:
        apps = rng.uniform(appetite[0], appetite[1], n)
    sites = tuple(Site(i, pts[i], float(apps[i])) for i in range(n))
    return Instance(metric, sites)


def two_site_fixture(b: float, appetite: float = 1.0,
                     metric: MetricSpec = None) -> Instance:
    """Two equal-appetite sites at (-b, 0) and (b, 0).

    Requires b < sqrt(appetite / unit_area): beyond that the first ball
    stops short of the midline halfplane picture that makes this fixture a
    closed-form reference.
    """
    if metric is None:
        metric = euclidean()
    cap = math.sqrt(appetite / metric.unit_area())
    if not (0.0 < b < cap):
        raise BOutOfRange(f"need 0 < b < {cap:.6g}, got {b}")
    return Instance(metric, (Site(0, Point(-b, 0.0), appetite),
                             Site(1, Point(b, 0.0), appetite)))


def lower_bound_family(m: int) -> Instance:
    """Instance whose diagram has at least m*(m-2) faces.

    A column of m huge-appetite sites is flanked by a row of unit-disk
    appetites spaced 2.1 apart; the disks commit first and the column
    regions must thread the gaps between them, fragmenting into about m
    pieces each.
    """
    if m < 4 or m % 2 != 0:
        raise GenerationFailure("family needs an even m >= 4")
    sites = []
    for i in range(m):
        y = -1.0 + 2.0 * i / (m - 1)
        sites.append(Site(i, Point(0.0, y), 10.0 * m * m))
    k = m
    for side in (1.0, -1.0):
        for j in range(m // 2):
            sites.append(Site(k, Point(side * 2.1 * (j + 1), 0.0), math.pi))
            k += 1
    return Instance(euclidean(), tuple(sites))
