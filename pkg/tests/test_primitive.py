"""Smallest-radius queries against independent bisection oracles.

The solver under test uses bracketed Newton (Euclidean) or a closed-form
quadratic per triangle wedge (polygonal).  The oracle here knows nothing of
either: it evaluates area(cell cap ball(r) minus committed) by plain region
booleans and bisects on r.  Monotonicity of that map makes bisection exact
to the requested width.
"""

import math

import numpy as np
import pytest

from stablevor.config import DEFAULT_TOL
from stablevor.geom import Point
from stablevor.metric import Ball, distance, euclidean, l1_metric, linf_metric
from stablevor.primitive import area_at_radius, free_region, solve_radius
from stablevor.regions import ball_region, boolean, square_region
from stablevor.voronoi import VoronoiDiagram

from conftest import two_site_first_radius


def bisect_radius(metric, cell, site, appetite, committed=(), rmax=50.0,
                  width=1e-11):
    """Independent oracle: bisection on the monotone area-vs-radius map."""
    if area_at_radius(metric, cell, site, rmax, committed) < appetite - 1e-9:
        return math.inf
    lo, hi = 0.0, rmax
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if area_at_radius(metric, cell, site, mid, committed) >= appetite:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def test_single_site_disk():
    cell = square_region(0, 0, 10)
    ans = solve_radius(euclidean(), cell, Point(0, 0), math.pi)
    assert ans.radius == pytest.approx(1.0, abs=1e-10)
    assert ans.free_area == pytest.approx(400.0)


def test_two_site_matches_transcendental_root():
    """Second round of the two-site instance: the remaining cell is a
    half-plane slab and the target radius solves
    r^2 (pi - acos(b/r)) + b sqrt(r^2 - b^2) = A."""
    b = 0.3
    box = square_region(0, 0, 20)
    vd = VoronoiDiagram(euclidean(), {0: Point(-b, 0), 1: Point(b, 0)},
                        (-20, -20, 20, 20))
    ans = solve_radius(euclidean(), vd.cell(0), Point(-b, 0), 1.0)
    assert ans.radius == pytest.approx(two_site_first_radius(b), abs=1e-10)
    del box


@pytest.mark.parametrize("seed", range(6))
def test_euclid_random_free_regions(seed):
    """Cell with committed balls carved out, random appetite: Newton answer
    equals the bisection oracle to 1e-9."""
    rng = np.random.default_rng(seed)
    site = Point(rng.uniform(-1, 1), rng.uniform(-1, 1))
    cell = square_region(0, 0, 4)
    committed = []
    for _ in range(int(rng.integers(0, 3))):
        c = Point(rng.uniform(-4, 4), rng.uniform(-4, 4))
        committed.append(Ball(euclidean(), c, rng.uniform(0.5, 2.0)))
    free = free_region(cell, committed, 1e-9).area()
    appetite = rng.uniform(0.2, 0.8) * free
    ans = solve_radius(euclidean(), cell, site, appetite, committed)
    want = bisect_radius(euclidean(), cell, site, appetite, committed)
    assert ans.radius == pytest.approx(want, abs=1e-9)
    # the answer really does capture the appetite
    got = area_at_radius(euclidean(), cell, site, ans.radius, committed)
    assert got == pytest.approx(appetite, abs=1e-7)


@pytest.mark.parametrize("metric", [linf_metric(), l1_metric()])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_polygonal_random_free_regions(metric, seed):
    """Polygonal-norm queries are closed form, so they should agree with the
    bisection oracle essentially to its width."""
    rng = np.random.default_rng(100 + seed)
    site = Point(rng.uniform(-1, 1), rng.uniform(-1, 1))
    cell = square_region(0, 0, 4)
    free = cell.area()
    appetite = rng.uniform(0.2, 0.6) * free
    ans = solve_radius(metric, cell, site, appetite)
    want = bisect_radius(metric, cell, site, appetite)
    assert ans.radius == pytest.approx(want, abs=1e-9)
    got = area_at_radius(metric, cell, site, ans.radius)
    assert got == pytest.approx(appetite, abs=1e-10)


def test_polygonal_exactness_on_plain_square():
    # ball fully inside the cell: r solves unit_area * r^2 = appetite exactly
    m = linf_metric()
    ans = solve_radius(m, square_region(0, 0, 10), Point(0, 0), 2.56)
    assert ans.radius == pytest.approx(0.8, abs=1e-12)


def test_polygonal_radius_survives_grazing_crit():
    # this site puts a diagonal wedge line exactly through a piece vertex
    # on the cell boundary at one of the critical offsets the bracket
    # search evaluates; a clip without vertex snapping drops the far
    # triangle there, the area map jumps down, and the bracket lands one
    # interval too far right
    m = l1_metric()
    cell = square_region(0.0, 0.0, 4.0)
    site = Point(0.8573993220978164, 1.2340014294491737)
    appetite = 35.12456072228591
    ans = solve_radius(m, cell, site, appetite)
    assert ans.radius == pytest.approx(
        bisect_radius(m, cell, site, appetite), abs=1e-10)
    assert area_at_radius(m, cell, site, ans.radius) == pytest.approx(
        appetite, abs=1e-9)


def test_saturation_returns_inf():
    cell = square_region(0, 0, 1)  # area 4
    ans = solve_radius(euclidean(), cell, Point(0, 0), 5.0)
    assert math.isinf(ans.radius)
    assert ans.free_area == pytest.approx(4.0)
    assert ans.evals == 0


def test_saturation_against_committed():
    cell = square_region(0, 0, 1)
    swallow = [Ball(euclidean(), Point(0, 0), 10.0)]
    ans = solve_radius(euclidean(), cell, Point(0, 0), 0.5, swallow)
    assert math.isinf(ans.radius)
    assert ans.free_area == pytest.approx(0.0, abs=1e-12)


def test_zero_appetite():
    ans = solve_radius(euclidean(), square_region(0, 0, 1), Point(0, 0), 0.0)
    assert ans.radius == 0.0


def test_area_map_monotone_in_radius():
    rng = np.random.default_rng(77)
    cell = square_region(0, 0, 3)
    committed = [Ball(euclidean(), Point(1.0, 1.0), 1.2)]
    site = Point(-0.5, -0.5)
    rs = np.sort(rng.uniform(0.0, 6.0, size=25))
    vals = [area_at_radius(euclidean(), cell, site, float(r), committed)
            for r in rs]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    assert vals[-1] == pytest.approx(
        free_region(cell, committed, 1e-9).area(), abs=1e-9)


def test_offcenter_site_partial_coverage():
    """Site near a corner: answer checked against the oracle, and the free
    area reported matches the plain cell area when nothing is committed."""
    cell = square_region(0, 0, 2)
    site = Point(1.7, 1.7)
    ans = solve_radius(euclidean(), cell, site, 3.0)
    want = bisect_radius(euclidean(), cell, site, 3.0)
    assert ans.radius == pytest.approx(want, abs=1e-9)
    assert ans.free_area == pytest.approx(16.0)


def test_evals_stay_modest():
    # bracketed Newton should land in well under fifty area evaluations
    rng = np.random.default_rng(5)
    cell = square_region(0, 0, 4)
    committed = [Ball(euclidean(), Point(2, 2), 1.0),
                 Ball(euclidean(), Point(-2, 1), 0.8)]
    for _ in range(10):
        site = Point(rng.uniform(-3, 3), rng.uniform(-3, 3))
        ans = solve_radius(euclidean(), cell, site, 4.0, committed)
        assert ans.evals < 50
