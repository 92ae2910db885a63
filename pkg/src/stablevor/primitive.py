"""Smallest-radius queries: how far a site must reach to capture an area.

This is the inner loop of the ordering solver.  Given a site, its current
nearest-site cell, the remaining appetite and the balls committed so far,
``solve_radius`` finds r with

    area((cell ∩ ball(site, r)) \\ committed balls) = appetite,

or +inf when even the whole uncovered cell falls short.  Euclidean queries
run a bracketed Newton iteration on an exact boundary-slice area function
whose derivative comes for free; polygonal-norm queries reduce to a single
quadratic once the uncovered cell is triangulated, so they are exact to
rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import DEFAULT_TOL, Tolerances
from .errors import GeometryError, QuadraticNoRoot
from .geom import (clip_polygon_halfplane, disk_clipped_area,
                   element_min_max_dist, shoelace, split_polygon_by_line)
from .metric import EUCLIDEAN, Ball, MetricSpec, spokes
from .regions import Region, ball_region, boolean
from .triangulate import triangulate_region


@dataclass(frozen=True)
class RadiusAnswer:
    radius: float      # +inf when the uncovered cell cannot hold the appetite
    free_area: float   # area of cell minus committed balls
    evals: int         # area evaluations spent


def free_region(cell: Region, committed, eps: float) -> Region:
    """The cell minus every committed ball whose box touches the cell's."""
    reg = cell
    cb = cell.bbox()
    if cb is None:
        return reg
    for ball in committed:
        if reg.is_empty():
            break
        bb = ball.bbox()
        if (bb[2] < cb[0] - eps or cb[2] < bb[0] - eps or
                bb[3] < cb[1] - eps or cb[3] < bb[1] - eps):
            continue
        reg = boolean(reg, ball_region(ball), "difference", eps)
    return reg


def area_at_radius(metric: MetricSpec, cell: Region, site, r: float,
                   committed=(), eps: float = 1e-9) -> float:
    """Reference evaluation of area((cell ∩ ball) \\ committed) by set algebra."""
    reg = free_region(cell, committed, eps)
    if reg.is_empty() or r <= 0.0:
        return 0.0
    hit = boolean(reg, ball_region(Ball(metric, site, r)), "intersect", eps)
    return hit.area()


def solve_radius(metric: MetricSpec, cell: Region, site, appetite: float,
                 committed=(), tol: Tolerances = DEFAULT_TOL,
                 scale: float = 1.0) -> RadiusAnswer:
    if metric.kind == EUCLIDEAN:
        return _euclid_solve(cell, site, appetite, committed, tol, scale)
    return _poly_solve(metric, cell, site, appetite, committed, tol, scale)


# ---------------------------------------------------------------------------
# Euclidean: bracketed Newton on the slice-decomposed area function


def _euclid_solve(cell, site, appetite, committed, tol, scale):
    eps = tol.eps_join * max(scale, 1.0)
    reg = free_region(cell, committed, eps)
    free = reg.area()
    if appetite <= 0.0:
        return RadiusAnswer(0.0, free, 0)
    eps_area = tol.eps_area(appetite)
    if free < appetite - eps_area:
        return RadiusAnswer(math.inf, free, 0)
    els = list(reg.elements())
    sx, sy = site.x, site.y
    crit = {0.0}
    for e in els:
        lo, hi = element_min_max_dist(e, sx, sy)
        crit.add(lo)
        crit.add(hi)
    crit = sorted(crit)
    evals = 0

    def F(r):
        nonlocal evals
        evals += 1
        return disk_clipped_area(els, sx, sy, r)

    # bracket between consecutive critical radii; F is C1 inside the bracket
    lo, hi = 0, len(crit) - 1
    flo, fhi = 0.0, free
    while hi - lo > 1:
        mid = (lo + hi) // 2
        fm, _ = F(crit[mid])
        if fm >= appetite:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    rlo, rhi = crit[lo], crit[hi]
    if fhi <= appetite + eps_area and rhi - rlo <= tol.eps_radius(scale):
        return RadiusAnswer(rhi, free, evals)

    eps_r = tol.eps_radius(scale)
    if fhi > flo:
        frac = (appetite - flo) / (fhi - flo)
        r = rlo + (rhi - rlo) * min(max(frac, 0.01), 0.99)
    else:
        r = 0.5 * (rlo + rhi)
    for _ in range(200):
        fr, dfr = F(r)
        g = fr - appetite
        if g < 0.0:
            rlo = r
        else:
            rhi = r
        if abs(g) <= eps_area:
            step = abs(g) / dfr if dfr > 0.0 else math.inf
            if rhi - rlo <= eps_r or step <= eps_r:
                return RadiusAnswer(r, free, evals)
        if dfr > 0.0:
            rn = r - g / dfr
        else:
            rn = r
        if not (rlo < rn < rhi):
            rn = 0.5 * (rlo + rhi)
        if rn == r:  # bracket exhausted at double precision
            return RadiusAnswer(r, free, evals)
        r = rn
    raise GeometryError("radius iteration did not converge")


# ---------------------------------------------------------------------------
# polygonal: triangulate, split into wedges, solve one quadratic


def _poly_solve(metric, cell, site, appetite, committed, tol, scale):
    eps = tol.eps_join * max(scale, 1.0)
    reg = free_region(cell, committed, eps)
    free = reg.area()
    if appetite <= 0.0:
        return RadiusAnswer(0.0, free, 0)
    eps_area = tol.eps_area(appetite)
    if free < appetite - eps_area:
        return RadiusAnswer(math.inf, free, 0)

    pieces = _wedge_pieces(metric, reg, site)
    bb = reg.bbox()
    span = max(1.0, abs(site.x), abs(site.y),
               *(abs(v) for v in (bb if bb else ())))
    band = 1e-13 * span
    crit = {0.0}
    for nx, ny, ce, verts in pieces:
        for (x, y) in verts:
            crit.add((nx * (x - site.x) + ny * (y - site.y)) / ce)
    crit = sorted(crit)
    evals = 0

    def F(d):
        # band: the sweep line lands exactly on piece vertices at every
        # crit value, where an unsnapped clip can drop whole triangles
        nonlocal evals
        evals += 1
        tot = 0.0
        for nx, ny, ce, verts in pieces:
            off = nx * site.x + ny * site.y + d * ce
            cut = clip_polygon_halfplane(verts, nx, ny, off, band)
            if len(cut) >= 3:
                tot += shoelace(cut)
        return tot

    lo, hi = 0, len(crit) - 1
    flo, fhi = 0.0, free
    while hi - lo > 1:
        mid = (lo + hi) // 2
        fm = F(crit[mid])
        if fm >= appetite:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    d1, d2 = crit[lo], crit[hi]
    h = d2 - d1
    if h <= 0.0:
        return RadiusAnswer(d1, free, evals)
    if fhi <= appetite:  # appetite meets or exceeds the last breakpoint
        return RadiusAnswer(d2, free, evals)

    # F is one quadratic on [d1, d2]; three samples pin it down exactly
    fm = F(d1 + 0.5 * h)
    b1 = (4.0 * fm - 3.0 * flo - fhi) / h
    q = (2.0 * fhi + 2.0 * flo - 4.0 * fm) / (h * h)
    c = appetite - flo
    if c <= 0.0:
        return RadiusAnswer(d1, free, evals)
    disc = b1 * b1 + 4.0 * q * c
    if disc < 0.0:
        if disc < -1e-9 * max(b1 * b1, 1.0):
            raise QuadraticNoRoot(f"no radius root in bracket [{d1}, {d2}]")
        disc = 0.0
    den = b1 + math.sqrt(disc)
    if den <= 0.0:
        raise QuadraticNoRoot("flat area growth inside bracket")
    x = 2.0 * c / den
    x = min(max(x, 0.0), h)
    return RadiusAnswer(d1 + x, free, evals)


def _wedge_pieces(metric, reg: Region, site):
    """Convex pieces of reg, each inside one wedge of the scaled ball.

    Returns (nx, ny, ce, verts) per piece: within the piece the gauge
    distance to the site is (n . (x - site)) / ce, a linear functional.
    """
    angs = spokes(metric)
    half = len(angs) // 2
    lines = [(math.cos(a), math.sin(a)) for a in angs[:half]]
    bb = reg.bbox()
    span = max(1.0, abs(site.x), abs(site.y),
               *(abs(v) for v in (bb if bb else ())))
    band = 1e-13 * span       # vertex-on-line snap width for the splits
    amin = band * span        # pieces thinner than the band are noise
    pieces = []
    for tri in triangulate_region(reg):
        polys = [list(tri)]
        for (dx, dy) in lines:
            nx, ny = -dy, dx
            off = nx * site.x + ny * site.y
            nxt = []
            for poly in polys:
                below, above = split_polygon_by_line(poly, nx, ny, off, band)
                if len(below) >= 3 and abs(shoelace(below)) > amin:
                    nxt.append(below)
                if len(above) >= 3 and abs(shoelace(above)) > amin:
                    nxt.append(above)
            polys = nxt
        for poly in polys:
            ar = shoelace(poly)
            if ar <= amin:
                continue
            cx = sum(p[0] for p in poly) / len(poly)
            cy = sum(p[1] for p in poly) / len(poly)
            w = metric.wedge_of(cx - site.x, cy - site.y)
            nx, ny, ce = metric.wedge_plane(w)
            pieces.append((nx, ny, ce, poly))
    return pieces
