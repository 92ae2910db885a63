"""Elements, intersections, and disk-clipping quadrature."""

import math

import numpy as np
import pytest
from conftest import mc_area
from hypothesis import given, settings
from hypothesis import strategies as st

from stablevor.errors import GeometryError
from stablevor.geom import (Arc, ArcSegBoundary, ConvexPolygon, Disk,
                            HalfPlane, Point, Seg, clip_polygon_halfplane,
                            dedup_ring, disk_clipped_area,
                            element_min_max_dist, intersect_elements,
                            seg_circle_params, shoelace,
                            split_polygon_by_line, wrap_pi)
from stablevor.regions import square_region

TAU = 2.0 * math.pi


def test_shoelace_square():
    assert shoelace([(0, 0), (1, 0), (1, 1), (0, 1)]) == pytest.approx(1.0)
    assert shoelace([(0, 0), (0, 1), (1, 1), (1, 0)]) == pytest.approx(-1.0)


def test_wrap_pi_range():
    for a in np.linspace(-20, 20, 401):
        w = wrap_pi(a)
        assert -math.pi <= w <= math.pi
        assert math.isclose(math.sin(w), math.sin(a), abs_tol=1e-12)


def test_point_disk_halfplane_basics():
    d = Disk(Point(1.0, 2.0), 3.0)
    assert d.area() == pytest.approx(9 * math.pi)
    assert d.contains(Point(1.0, 4.9)) and not d.contains(Point(1.0, 5.1))
    h = HalfPlane(0.0, 1.0, 0.5)  # y <= 0.5
    assert h.contains(Point(7.0, 0.4)) and not h.contains(Point(0.0, 0.6))


def test_convex_polygon_rejects_bad_input():
    with pytest.raises(GeometryError):
        ConvexPolygon((Point(0, 0), Point(1, 0)))
    with pytest.raises(GeometryError):
        # clockwise = negative area
        ConvexPolygon((Point(0, 0), Point(0, 1), Point(1, 1), Point(1, 0)))


def test_seg_arc_parametrization():
    s = Seg(0, 0, 2, 0)
    assert s.point_at(0.25) == (0.5, 0.0)
    assert s.length() == pytest.approx(2.0)
    a = Arc(0, 0, 2, 0.0, math.pi)
    assert a.point_at(0.5) == pytest.approx((2 * math.cos(math.pi / 2),
                                             2 * math.sin(math.pi / 2)))
    assert a.length() == pytest.approx(2 * math.pi)
    assert not a.is_full_circle(1e-9)
    assert Arc(0, 0, 1, 0.3, TAU).is_full_circle(1e-9)


def test_reversed_flips_green_area():
    loop = ArcSegBoundary([Arc(0, 0, 1, 0, TAU)])
    assert loop.signed_area() == pytest.approx(math.pi, rel=1e-12)
    assert loop.reversed().signed_area() == pytest.approx(-math.pi, rel=1e-12)


def test_seg_circle_params_crossings():
    # chord through the unit circle at height 0.5: x = +-sqrt(3)/2
    e = Seg(-2, 0.5, 2, 0.5)
    us = seg_circle_params(e, 0.0, 0.0, 1.0)
    xs = sorted(e.point_at(u)[0] for u in us)
    assert xs == pytest.approx([-math.sqrt(3) / 2, math.sqrt(3) / 2])
    assert seg_circle_params(Seg(-2, 3, 2, 3), 0, 0, 1) == []


def test_intersect_elements_pairs():
    # returns (u1, u2) parameter pairs; map through point_at for coordinates
    eps = 1e-9
    e1, e2 = Seg(-1, -1, 1, 1), Seg(-1, 1, 1, -1)
    us = intersect_elements(e1, e2, eps)
    assert len(us) == 1
    assert e1.point_at(us[0][0]) == pytest.approx((0.0, 0.0))
    assert e2.point_at(us[0][1]) == pytest.approx((0.0, 0.0))
    # two unit circles distance 1 apart meet at x=1/2, y=+-sqrt(3)/2
    a1 = Arc(0, 0, 1, 0, TAU)
    a2 = Arc(1, 0, 1, 0, TAU)
    got = sorted((a1.point_at(u1) for u1, _ in intersect_elements(a1, a2, eps)),
                 key=lambda p: p[1])
    assert got[0] == pytest.approx((0.5, -math.sqrt(3) / 2))
    assert got[1] == pytest.approx((0.5, math.sqrt(3) / 2))
    # vertical chord crossing the circle twice
    ch = Seg(0.5, -2, 0.5, 2)
    ys = sorted(ch.point_at(u1)[1]
                for u1, _ in intersect_elements(ch, a1, eps))
    assert ys == pytest.approx([-math.sqrt(3) / 2, math.sqrt(3) / 2])


def test_clip_polygon_halfplane_square():
    sq = [(0, 0), (1, 0), (1, 1), (0, 1)]
    kept = clip_polygon_halfplane(sq, 1.0, 0.0, 0.5)  # x <= 0.5
    assert shoelace(kept) == pytest.approx(0.5)
    gone = clip_polygon_halfplane(sq, 1.0, 0.0, -0.1)
    assert gone == []


@given(st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5)),
                min_size=3, max_size=3),
       st.floats(-1, 1), st.floats(-1, 1), st.floats(-2, 2))
@settings(max_examples=150, deadline=None)
def test_split_by_line_partitions_area(tri, nx, ny, off):
    area = shoelace(tri)
    if abs(area) < 1e-3 or math.hypot(nx, ny) < 1e-3:
        return
    if area < 0:
        tri = tri[::-1]
    lo, hi = split_polygon_by_line(tri, nx, ny, off)
    assert shoelace(lo) + shoelace(hi) == pytest.approx(abs(area), abs=1e-9)


def test_dedup_ring():
    assert dedup_ring([(0, 0), (0, 0), (1, 0), (1, 1), (0, 0)], 1e-9) == [
        (0, 0), (1, 0), (1, 1)]


def test_element_min_max_dist_brute_force(rng):
    for _ in range(40):
        if rng.random() < 0.5:
            e = Seg(*rng.uniform(-3, 3, 4))
        else:
            e = Arc(*rng.uniform(-2, 2, 2), rng.uniform(0.2, 2),
                    rng.uniform(-4, 4), rng.uniform(-TAU, TAU))
        if e.length() < 1e-6:
            continue
        sx, sy = rng.uniform(-3, 3, 2)
        lo, hi = element_min_max_dist(e, sx, sy)
        us = np.linspace(0, 1, 2001)
        ds = np.hypot(*(np.array([e.point_at(u) for u in us]).T
                        - np.array([[sx], [sy]])))
        assert lo <= ds.min() + 1e-6
        assert hi >= ds.max() - 1e-6
        assert lo >= ds.min() - 1e-3 and hi <= ds.max() + 1e-3


def test_disk_clipped_area_square_cases():
    els = list(square_region(0, 0, 1).elements())
    # disk well inside the square
    a, _ = disk_clipped_area(els, 0.0, 0.0, 0.5)
    assert a == pytest.approx(math.pi * 0.25, rel=1e-12)
    # disk swallowing the square
    a, dphi = disk_clipped_area(els, 0.0, 0.0, 5.0)
    assert a == pytest.approx(4.0, rel=1e-12)
    assert dphi == pytest.approx(0.0, abs=1e-12)
    # quarter overlap from a corner-centered disk
    a, _ = disk_clipped_area(els, 1.0, 1.0, 0.8)
    assert a == pytest.approx(math.pi * 0.64 / 4, rel=1e-12)


def test_disk_clipped_area_matches_monte_carlo():
    els = list(square_region(0.3, -0.2, 1.1).elements())
    for k, r in enumerate((0.4, 0.9, 1.6)):
        a, _ = disk_clipped_area(els, -0.5, 0.1, r)
        est, sig = mc_area(
            lambda xs, ys, rr=r: (np.hypot(xs + 0.5, ys - 0.1) <= rr)
            & (np.abs(xs - 0.3) <= 1.1) & (np.abs(ys + 0.2) <= 1.1),
            (-1.5, -1.5, 1.5, 1.5), n=400000,
            rng=np.random.default_rng(60 + k))
        assert abs(a - est) < 4 * sig


def test_disk_clipped_area_derivative_is_free_angle():
    els = list(square_region(0, 0, 1).elements())
    # r=1.3: circle pokes out of all four sides, smooth regime
    r = 1.3
    h = 1e-6
    a0, dphi = disk_clipped_area(els, 0.0, 0.0, r)
    ap, _ = disk_clipped_area(els, 0.0, 0.0, r + h)
    am, _ = disk_clipped_area(els, 0.0, 0.0, r - h)
    assert (ap - am) / (2 * h) == pytest.approx(dphi, rel=1e-5)


def test_tangent_edge_classified_outside():
    # disk internally tangent to a region edge: the edge has no crossing
    # parameters and its sample point sits exactly on the circle; it must
    # count as outside or the whole fan area leaks in
    els = list(square_region(-25.0, 0.0, 25.0).elements())
    a, _ = disk_clipped_area(els, -0.4, 0.0, 0.4)
    assert a == pytest.approx(math.pi * 0.16, rel=1e-12)
