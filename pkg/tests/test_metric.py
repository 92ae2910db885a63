"""Convex distance functions, balls, and bisector tracing."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stablevor.config import DEFAULT_TOL
from stablevor.errors import DegenerateBisector, GeometryError
from stablevor.geom import Point
from stablevor.metric import (Ball, MetricSpec, _degenerate_pair, bisector,
                              distance, dominance_half_loop, euclidean,
                              l1_metric, linf_metric, polygonal, spokes,
                              trace_bisector)


def test_gauge_formulas():
    li = linf_metric()
    l1 = l1_metric()
    for x, y in [(1.0, 0.2), (-0.7, 0.5), (0.0, -2.0), (3.0, 3.0)]:
        assert li.gauge(x, y) == pytest.approx(max(abs(x), abs(y)), rel=1e-12)
        assert l1.gauge(x, y) == pytest.approx(abs(x) + abs(y), rel=1e-12)
    assert euclidean().gauge(3.0, 4.0) == pytest.approx(5.0)


@given(st.floats(-10, 10), st.floats(-10, 10), st.floats(0.01, 20))
@settings(max_examples=200, deadline=None)
def test_gauge_positive_homogeneity(x, y, lam):
    m = l1_metric()
    assert m.gauge(lam * x, lam * y) == pytest.approx(
        lam * m.gauge(x, y), rel=1e-9, abs=1e-12)
    # central symmetry of the unit ball makes the gauge even
    assert m.gauge(-x, -y) == pytest.approx(m.gauge(x, y), rel=1e-12,
                                            abs=1e-15)


def test_gauge_many_matches_scalar(rng):
    for m in (euclidean(), linf_metric(), l1_metric(),
              polygonal([(2, 0), (0, 1), (-2, 0), (0, -1)])):
        xs = rng.uniform(-5, 5, 200)
        ys = rng.uniform(-5, 5, 200)
        got = m.gauge_many(xs, ys)
        want = [m.gauge(x, y) for x, y in zip(xs, ys)]
        assert np.allclose(got, want, rtol=1e-12, atol=0)


def test_unit_area_and_circumradius():
    assert euclidean().unit_area() == pytest.approx(math.pi)
    assert linf_metric().unit_area() == pytest.approx(4.0)
    assert l1_metric().unit_area() == pytest.approx(2.0)
    assert euclidean().circumradius() == 1.0
    assert linf_metric().circumradius() == pytest.approx(math.sqrt(2))
    assert l1_metric().circumradius() == pytest.approx(1.0)


def test_polygonal_validation():
    with pytest.raises(GeometryError):
        polygonal([(1, 0), (0, 1), (-1, 0)])  # not centrally symmetric
    with pytest.raises(GeometryError):
        polygonal([(1, 0), (-1, 0)])


def test_ball_area_contains_boundary():
    m = linf_metric()
    b = Ball(m, Point(1.0, -2.0), 1.5)
    assert b.area() == pytest.approx(4.0 * 1.5 * 1.5)
    assert b.contains(Point(2.4, -1.0))
    assert not b.contains(Point(2.6, -2.0))
    loop = b.boundary_loop(tag=("ball", 7))
    assert loop.signed_area() == pytest.approx(b.area(), rel=1e-12)
    assert [e.tag for e in loop] == [("ball", 7, k) for k in range(4)]
    x0, y0, x1, y1 = b.bbox()
    assert (x0, y0, x1, y1) == pytest.approx((-0.5, -3.5, 2.5, -0.5))


def test_euclidean_ball_boundary_is_circle():
    b = Ball(euclidean(), Point(0.5, 0.5), 2.0)
    loop = b.boundary_loop(tag=("ball", 0))
    assert len(loop) == 1
    assert loop.signed_area() == pytest.approx(4 * math.pi, rel=1e-12)


def test_spokes_count():
    assert len(spokes(linf_metric())) == 4
    assert len(spokes(polygonal([(2, 0), (1, 2), (-1, 1), (-2, 0), (-1, -2),
                                 (1, -1)]))) == 6


def test_distance_symmetry():
    m = l1_metric()
    a, b = Point(0.3, -1.0), Point(2.0, 0.5)
    assert distance(m, a, b) == pytest.approx(distance(m, b, a))
    assert distance(m, a, b) == pytest.approx(abs(2.0 - 0.3) + abs(0.5 + 1.0))


def test_trace_bisector_points_equidistant():
    m = polygonal([(2, 0), (0, 1), (-2, 0), (0, -1)])
    s, t = Point(-0.8, 0.3), Point(1.1, -0.4)
    pts, pairs = trace_bisector(m, s, t, extent=6.0)
    assert len(pts) >= 4
    assert len(pairs) == len(pts) - 1
    for x, y in pts:
        ds = m.gauge(x - s.x, y - s.y)
        dt = m.gauge(x - t.x, y - t.y)
        assert abs(ds - dt) <= 1e-9 * max(1.0, ds)


def test_degenerate_pair_detection():
    m = linf_metric()
    # pair direction parallel to a ball edge: ties fatten to 2-D
    assert _degenerate_pair(m, Point(0, 0), Point(2, 0), DEFAULT_TOL)
    assert not _degenerate_pair(m, Point(0, 0), Point(2, 0.7), DEFAULT_TOL)
    with pytest.raises(DegenerateBisector):
        bisector(m, Point(0, 0), Point(0, 3), DEFAULT_TOL)


def test_dominance_half_loop_is_nearer_territory(rng):
    from stablevor.regions import Region
    m = linf_metric()
    s, t = Point(-0.5, 0.2), Point(0.9, -0.7)
    loop = dominance_half_loop(m, s, t, Point(0, 0), 4.0,
                               seg_tag_fn=lambda pr: ("bis", 0, 1, *pr),
                               box_tag_fn=lambda k: ("bbox", k))
    reg = Region([loop])
    xs = rng.uniform(-3.5, 3.5, 4000)
    ys = rng.uniform(-3.5, 3.5, 4000)
    inside = reg.contains_many(xs, ys)
    ds = m.gauge_many(xs - s.x, ys - s.y)
    dt = m.gauge_many(xs - t.x, ys - t.y)
    # inside the loop means no farther from s than from t (modulo boundary)
    assert not (inside & (ds > dt + 1e-6)).any()
    # and the loop plus its mirror tile the box
    reg2 = Region([dominance_half_loop(
        m, t, s, Point(0, 0), 4.0,
        seg_tag_fn=lambda pr: ("bis", 0, 1, *pr),
        box_tag_fn=lambda k: ("bbox", k))])
    assert reg.area() + reg2.area() == pytest.approx(64.0, rel=1e-9)
    # box-closure segments carry real box side tags for the glue stage
    box_tags = {e.tag for lp in reg.loops for e in lp
                if e.tag and e.tag[0] == "bbox"}
    assert box_tags and all(0 <= t2[1] <= 3 for t2 in box_tags)


def test_euclidean_bisector_is_midline_halfplane():
    h = bisector(euclidean(), Point(0, 0), Point(2, 0), DEFAULT_TOL)
    # halfplane containing s: boundary x = 1
    assert (h.nx, h.ny, h.offset) == pytest.approx((1.0, 0.0, 1.0))
    assert h.contains(Point(0.0, 5.0)) and not h.contains(Point(1.5, 0.0))
