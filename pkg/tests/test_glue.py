"""Piece assembly by signed carrier coverage.

Seams between pieces of the same site must cancel, surviving intervals must
be re-emitted exactly on their canonical carriers, and inconsistent inputs
(double coverage, missing tags, seams pointing at the wrong carrier) must
fail loudly instead of producing an almost-right region.
"""

import math

import pytest

from stablevor.errors import GeometryError, TopologyError
from stablevor.geom import Arc, Point, Seg
from stablevor.glue import CarrierIndex, glue_pieces
from stablevor.metric import euclidean
from stablevor.regions import Region, square_region, stitch
from stablevor.solver import Site, edge_residuals, solve


BOUNDS = (-1.0, -1.0, 1.0, 1.0)


def carrier_index(points=None, radii=None, bounds=BOUNDS):
    return CarrierIndex(euclidean(),
                        points or {0: Point(-1.0, 0.0), 1: Point(1.0, 0.0)},
                        radii or {}, bounds)


def rect_piece(x0, x1, seam_tags):
    """[x0, x1] x [-1, 1] with bbox tags outside and seam tags at x0/x1.

    seam_tags maps "left"/"right" to a tag; sides not named fall back to the
    matching bbox tag.
    """
    left = seam_tags.get("left", ("bbox", 3))
    right = seam_tags.get("right", ("bbox", 1))
    els = [Seg(x0, -1.0, x1, -1.0, ("bbox", 0)),
           Seg(x1, -1.0, x1, 1.0, right),
           Seg(x1, 1.0, x0, 1.0, ("bbox", 2)),
           Seg(x0, 1.0, x0, -1.0, left)]
    return Region(stitch(els, 1e-9))


def test_seam_cancels_exactly():
    left = rect_piece(-1.0, 0.0, {"right": ("bis", 0, 1)})
    right = rect_piece(0.0, 1.0, {"left": ("bis", 0, 1)})
    glued = glue_pieces([left, right], carrier_index(), 1e-9)
    assert glued.area() == pytest.approx(4.0, abs=1e-12)
    tags = {e.tag for loop in glued.loops for e in loop.elements}
    # the internal seam is gone, only box carriers remain
    assert tags == {("bbox", 0), ("bbox", 1), ("bbox", 2), ("bbox", 3)}


def test_single_piece_passes_through():
    left = rect_piece(-1.0, 0.0, {"right": ("bis", 0, 1)})
    glued = glue_pieces([left], carrier_index(), 1e-9)
    assert glued.area() == pytest.approx(2.0, abs=1e-12)
    tags = {e.tag for loop in glued.loops for e in loop.elements}
    assert ("bis", 0, 1) in tags


def test_offcarrier_fragments_snap_back():
    """Fragment endpoints wobble off the carrier by clipping noise; the
    glued edge must land back on the exact carrier line."""
    bump = 3e-10
    left = rect_piece(-1.0, bump, {"right": ("bis", 0, 1)})
    right = rect_piece(bump, 1.0, {"left": ("bis", 0, 1)})
    glued = glue_pieces([left], carrier_index(), 1e-9)
    for loop in glued.loops:
        for e in loop.elements:
            if e.tag == ("bis", 0, 1):
                assert e.ax == 0.0 and e.bx == 0.0  # exactly on x = 0
    whole = glue_pieces([left, right], carrier_index(), 1e-9)
    assert whole.area() == pytest.approx(4.0, abs=1e-9)


def test_duplicate_coverage_rejected():
    left = rect_piece(-1.0, 0.0, {"right": ("bis", 0, 1)})
    with pytest.raises(TopologyError):
        glue_pieces([left, left], carrier_index(), 1e-9)


def test_untagged_element_rejected():
    with pytest.raises(GeometryError):
        glue_pieces([square_region(0, 0, 1)], carrier_index(), 1e-9)


def test_mismatched_seam_carriers_do_not_close():
    # the two seam sides name different pairs, so they resolve to different
    # lines, survive with net coverage 1 each, and the boundary cannot close
    pts = {0: Point(-1.0, 0.0), 1: Point(1.0, 0.0), 2: Point(2.0, 0.0)}
    left = rect_piece(-1.0, 0.0, {"right": ("bis", 0, 1)})
    right = rect_piece(0.0, 1.0, {"left": ("bis", 0, 2)})  # resolves to x=0.5
    with pytest.raises(TopologyError):
        glue_pieces([left, right], carrier_index(points=pts), 1e-9)


def test_circle_carrier_reemission():
    """Quarter-disk pieces split by a seam reassemble into a half disk whose
    arc sits exactly on the committed circle."""
    r = 0.75
    # bis(0,1) resolves to y=0, bis(2,3) to x=0, ball 4 to the circle
    pts = {0: Point(0.0, 1.0), 1: Point(0.0, -1.0),
           2: Point(1.0, 0.0), 3: Point(-1.0, 0.0), 4: Point(0.0, 0.0)}
    quads = []
    for k in (0, 1):
        a0 = k * math.pi / 2
        arc = Arc(0.0, 0.0, r, a0, math.pi / 2, ("ball", 4))
        if k == 0:
            seams = [Seg(0.0, r, 0.0, 0.0, ("bis", 2, 3)),
                     Seg(0.0, 0.0, r, 0.0, ("bis", 0, 1))]
        else:
            seams = [Seg(-r, 0.0, 0.0, 0.0, ("bis", 0, 1)),
                     Seg(0.0, 0.0, 0.0, r, ("bis", 2, 3))]
        quads.append(Region(stitch([arc, *seams], 1e-9)))
    idx = CarrierIndex(euclidean(), pts, {4: r}, BOUNDS)
    half = glue_pieces(quads, idx, 1e-9)
    assert half.area() == pytest.approx(math.pi * r * r / 2, abs=1e-12)
    arcs = [e for loop in half.loops for e in loop.elements
            if isinstance(e, Arc)]
    assert arcs and all(a.cx == 0.0 and a.cy == 0.0 and a.r == r
                        for a in arcs)
    assert sum(a.sweep for a in arcs) == pytest.approx(math.pi, abs=1e-12)


def test_solved_two_site_edges_exact():
    """End to end: each region of a solved instance is one ball arc plus one
    bisector chord, both sitting on their carriers to rounding error."""
    sites = [Site(0, Point(-0.3, 0.0), 1.0), Site(1, Point(0.3, 0.0), 1.0)]
    diag = solve(euclidean(), sites)
    assert edge_residuals(diag) <= 1e-12
    for sid in (0, 1):
        reg = diag.regions[sid]
        kinds = sorted(type(e).__name__
                       for loop in reg.loops for e in loop.elements)
        assert kinds == ["Arc", "Seg"]
        for loop in reg.loops:
            for e in loop.elements:
                if isinstance(e, Arc):
                    assert e.tag[:2] == ("ball", sid)
                    assert e.r == diag.radii[sid]
                else:
                    assert e.tag[:3] == ("bis", 0, 1)
                    assert e.ax == 0.0 and e.bx == 0.0
