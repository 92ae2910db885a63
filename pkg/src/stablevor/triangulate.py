"""Triangulation of straight-edged regions, holes included.

Works by horizontal slab decomposition: cut at every vertex ordinate, so
inside each slab the boundary fragments span the slab fully and pairing them
left to right by winding yields disjoint trapezoids.  This is slower than an
ear clipper on paper but has no reflex/bridging case analysis, which matters
more here than speed: the inputs are small polygons produced by exact
clipping, often with collinear chains.
"""

from __future__ import annotations

from .errors import GeometryError, NotPolygonal
from .geom import Seg
from .regions import Region


def triangulate_region(region: Region, eps: float = 1e-12):
    """Split a region with straight edges into CCW triangles.

    Returns a list of ((ax, ay), (bx, by), (cx, cy)) triples whose areas sum
    to the region area.  Raises NotPolygonal if any boundary element is
    curved.
    """
    els = []
    for loop in region.loops:
        for e in loop.elements:
            if not isinstance(e, Seg):
                raise NotPolygonal("triangulation needs straight edges only")
            els.append(e)
    if not els:
        return []
    ys = sorted({e.ay for e in els} | {e.by for e in els})
    span = max(ys[-1] - ys[0], 1.0)
    band = eps * span
    levels = [ys[0]]
    for y in ys[1:]:
        if y - levels[-1] > band:
            levels.append(y)
    tris = []
    for y0, y1 in zip(levels, levels[1:]):
        ym = 0.5 * (y0 + y1)
        rows = []
        for e in els:
            lo, hi = min(e.ay, e.by), max(e.ay, e.by)
            if lo > y0 + band or hi < y1 - band:
                continue  # not spanning: horizontal edges live on slab rims
            xm = e.ax + (ym - e.ay) / (e.by - e.ay) * (e.bx - e.ax)
            rows.append((xm, -1.0 if e.by > e.ay else 1.0, e))
        rows.sort(key=lambda r: r[0])
        winding = 0.0
        entry = None
        for xm, sgn, e in rows:
            was_inside = winding > 0.5
            winding += sgn
            if not was_inside and winding > 0.5:
                entry = e
            elif was_inside and winding <= 0.5:
                _emit_trapezoid(tris, entry, e, y0, y1, band)
                entry = None
        if abs(winding) > 0.5:
            raise GeometryError("unbalanced boundary crossings in slab")
    return tris


def _x_at(e: Seg, y: float) -> float:
    return e.ax + (y - e.ay) / (e.by - e.ay) * (e.bx - e.ax)


def _emit_trapezoid(tris, left: Seg, right: Seg, y0: float, y1: float, eps: float):
    a = (_x_at(left, y0), y0)
    b = (_x_at(right, y0), y0)
    c = (_x_at(right, y1), y1)
    d = (_x_at(left, y1), y1)
    bot = b[0] - a[0] > eps
    top = c[0] - d[0] > eps
    if bot and top:
        tris.append((a, b, c))
        tris.append((a, c, d))
    elif bot:
        tris.append((a, b, c))
    elif top:
        tris.append((a, c, d))


def triangles_area(tris) -> float:
    tot = 0.0
    for (ax, ay), (bx, by), (cx, cy) in tris:
        tot += 0.5 * ((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
    return tot
