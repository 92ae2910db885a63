"""Plane regions bounded by segments and arcs, with boolean operations.

A region is a set of disjoint closed loops: outer boundaries counterclockwise,
holes clockwise, so total signed area is the region area.  Booleans split both
boundaries at mutual intersections, classify every fragment by midpoint
winding, keep the fragments the operation calls for, and stitch the survivors
back into loops.  Intersection points are snapped within eps_join, the only
curve classes are lines and circles, and fragments keep their carrier tags
through every split.
"""

import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, MetricMismatch
from .geom import (TAU, Arc, ArcSegBoundary, ConvexPolygon, Point, Seg,
                   intersect_elements, norm_tau, same_carrier)
from .metric import Ball, MetricSpec

_RAY_ANGLES = [0.7853981, 2.399963, 5.0132565, 1.1190548, 3.7812973,
               0.2718281, 4.4428829, 2.9520529, 5.8008514, 1.7724539]


class Region:
    """Union of faces described by oriented boundary loops."""

    __slots__ = ("loops",)

    def __init__(self, loops):
        self.loops = [lp if isinstance(lp, ArcSegBoundary) else ArcSegBoundary(lp)
                      for lp in loops]

    def __repr__(self):
        return f"Region({len(self.loops)} loops, area={self.area():.6g})"

    def is_empty(self):
        return not self.loops

    def elements(self):
        for lp in self.loops:
            yield from lp.elements

    def area(self) -> float:
        return sum(lp.signed_area() for lp in self.loops)

    def bbox(self):
        if not self.loops:
            return (0.0, 0.0, 0.0, 0.0)
        bs = [lp.bbox() for lp in self.loops]
        return (min(b[0] for b in bs), min(b[1] for b in bs),
                max(b[2] for b in bs), max(b[3] for b in bs))

    def contains(self, x: float, y: float, eps: float = 1e-9) -> bool:
        return winding_number(list(self.elements()), x, y, eps) > 0

    def contains_many(self, xs, ys, eps: float = 1e-9):
        return contains_many(list(self.elements()), xs, ys, eps)

    def faces(self):
        """Group loops into (outer, holes) pairs by containment."""
        outers = []
        holes = []
        for lp in self.loops:
            (outers if lp.signed_area() >= 0.0 else holes).append(lp)
        out = [(lp, []) for lp in outers]
        for h in holes:
            px, py = h.a_point_on()
            best = None
            best_area = math.inf
            for i, (outer, _hs) in enumerate(out):
                a = outer.signed_area()
                if a < best_area and winding_number(outer.elements, px, py, 1e-12) > 0:
                    best, best_area = i, a
            if best is None:
                raise GeometryError("hole loop without a containing outer loop")
            out[best][1].append(h)
        return out


def square_region(cx, cy, half, tag=None) -> Region:
    pts = [(cx - half, cy - half), (cx + half, cy - half),
           (cx + half, cy + half), (cx - half, cy + half)]
    els = [Seg(pts[i][0], pts[i][1], pts[(i + 1) % 4][0], pts[(i + 1) % 4][1], tag)
           for i in range(4)]
    return Region([els])


def polygon_region(poly: ConvexPolygon, tag=None) -> Region:
    vs = poly.vertices
    els = [Seg(vs[i].x, vs[i].y, vs[(i + 1) % len(vs)].x, vs[(i + 1) % len(vs)].y, tag)
           for i in range(len(vs))]
    return Region([els])


def ball_region(ball: Ball, tag=None) -> Region:
    return Region([ball.boundary_loop(tag)])


# ---------------------------------------------------------------------------
# winding / point location


def _seg_ray_hits(e, px, py, dx, dy, eps):
    ex, ey = e.bx - e.ax, e.by - e.ay
    ln = math.hypot(ex, ey)
    den = dx * ey - dy * ex
    if abs(den) <= 1e-12 * ln:
        # parallel: degenerate only if the ray nearly rides the carrier
        wx, wy = e.ax - px, e.ay - py
        if abs(wx * dy - wy * dx) <= eps:
            return None
        return []
    wx, wy = px - e.ax, py - e.ay
    t = (dx * wy - dy * wx) / den
    tau = (ex * wy - ey * wx) / den
    if abs(tau) <= eps:
        # ray origin sits on the carrier line; degenerate only on the element
        if t * ln >= -eps and (t - 1.0) * ln <= eps:
            return None
        return []
    if tau < 0.0:
        return []
    if t * ln < -eps or (t - 1.0) * ln > eps:
        return []
    if t * ln <= eps or (1.0 - t) * ln <= eps:
        return None
    return [1 if den > 0 else -1]


def _arc_ray_hits(e, px, py, dx, dy, eps):
    wx, wy = px - e.cx, py - e.cy
    B = wx * dx + wy * dy
    C = wx * wx + wy * wy - e.r * e.r
    disc = B * B - C
    if disc <= 0.0:
        if disc > -eps * e.r:
            return None
        return []
    sq = math.sqrt(disc)
    if sq <= eps:
        return None
    out = []
    aeps = eps / max(e.r, 1e-300)
    for tau in (-B - sq, -B + sq):
        if abs(tau) <= eps:
            # ray origin lies on the circle; degenerate only on the arc span
            phi0 = math.atan2(py - e.cy, px - e.cx)
            if e.param_of_angle(phi0, aeps * 4) is not None:
                return None
            continue
        if tau < 0.0:
            continue
        qx, qy = px + tau * dx, py + tau * dy
        phi = math.atan2(qy - e.cy, qx - e.cx)
        u = e.param_of_angle(phi)
        if u is None:
            near = e.param_of_angle(phi, aeps * 4)
            if near is not None and not e.is_full_circle():
                return None
            continue
        if not e.is_full_circle():
            span = abs(e.sweep)
            if u * span <= aeps or (1.0 - u) * span <= aeps:
                return None
        tx, ty = e.tangent_at(u)
        cr = dx * ty - dy * tx
        if abs(cr) <= 1e-9:
            return None
        out.append(1 if cr > 0 else -1)
    return out


def winding_number(elements, px, py, eps):
    """Winding of a closed element collection around (px, py).

    Points within eps of the boundary report winding 1 (treated inside).
    """
    for ang in _RAY_ANGLES:
        dx, dy = math.cos(ang), math.sin(ang)
        total = 0
        ok = True
        for e in elements:
            if isinstance(e, Seg):
                hits = _seg_ray_hits(e, px, py, dx, dy, eps)
            else:
                hits = _arc_ray_hits(e, px, py, dx, dy, eps)
            if hits is None:
                ok = False
                break
            total += sum(hits)
        if ok:
            return total
        if _on_boundary(elements, px, py, eps):
            return 1
    raise GeometryError("point location failed for all ray directions")


def _on_boundary(elements, px, py, eps):
    for e in elements:
        if isinstance(e, Seg):
            ex, ey = e.bx - e.ax, e.by - e.ay
            ll = ex * ex + ey * ey
            if ll == 0.0:
                continue
            t = ((px - e.ax) * ex + (py - e.ay) * ey) / ll
            t = min(1.0, max(0.0, t))
            qx, qy = e.ax + t * ex, e.ay + t * ey
            if math.hypot(px - qx, py - qy) <= eps:
                return True
        else:
            d = math.hypot(px - e.cx, py - e.cy)
            if abs(d - e.r) <= eps:
                phi = math.atan2(py - e.cy, px - e.cx)
                if e.param_of_angle(phi, eps / max(e.r, 1e-300)) is not None:
                    return True
    return False


def contains_many(elements, xs, ys, eps=1e-9):
    """Vectorized winding > 0 test with a scalar fallback near degeneracies."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    wind = np.zeros(xs.shape, dtype=np.int64)
    fallback = np.zeros(xs.shape, dtype=bool)
    for e in elements:
        if isinstance(e, Seg):
            ey0, ey1 = e.ay, e.by
            dy = ey1 - ey0
            near = (np.abs(ys - ey0) <= eps) | (np.abs(ys - ey1) <= eps)
            if abs(dy) <= 1e-15:
                on_row = np.abs(ys - ey0) <= eps
                between = (xs >= min(e.ax, e.bx) - eps) & (xs <= max(e.ax, e.bx) + eps)
                fallback |= on_row & between
                continue
            t = (ys - ey0) / dy
            hit = (t > 0.0) & (t < 1.0)
            xint = e.ax + t * (e.bx - e.ax)
            cross = hit & (xint > xs)
            fallback |= near | (hit & (np.abs(xint - xs) <= eps))
            wind += np.where(cross, 1 if dy > 0 else -1, 0)
        else:
            dy = ys - e.cy
            rad = e.r * e.r - dy * dy
            fallback |= np.abs(np.abs(dy) - e.r) <= 4.0 * eps * max(e.r, 1.0)
            ok = rad > 0.0
            sq = np.sqrt(np.where(ok, rad, 1.0))
            sgn = 1.0 if e.sweep >= 0 else -1.0
            span = abs(e.sweep)
            aeps = eps / max(e.r, 1e-300)
            for branch in (1.0, -1.0):
                xint = e.cx + branch * sq
                phi = np.arctan2(dy, branch * sq)
                if e.sweep >= 0:
                    tpar = np.mod(phi - e.a0, TAU)
                else:
                    tpar = np.mod(e.a0 - phi, TAU)
                on_arc = ok & (tpar <= span) & (xint > xs)
                near_end = ok & ((np.minimum(tpar, np.abs(span - tpar)) <= aeps * 4)
                                 | (tpar >= TAU - aeps * 4))
                if not e.is_full_circle(1e-9):
                    fallback |= near_end & (xint > xs - eps)
                fallback |= ok & (np.abs(xint - xs) <= eps)
                wind += np.where(on_arc, int(sgn * branch), 0)
    out = wind > 0
    idx = np.nonzero(fallback)
    if len(idx[0]):
        flat_x, flat_y = xs[idx], ys[idx]
        vals = [winding_number(elements, float(x), float(y), eps) > 0
                for x, y in zip(flat_x, flat_y)]
        out[idx] = vals
    return out


# ---------------------------------------------------------------------------
# boolean operations


def _interior_params(e, us, eps):
    ln = max(e.length(), 1e-300)
    keep = []
    for u in sorted(us):
        if u * ln <= eps or (1.0 - u) * ln <= eps:
            continue
        if keep and (u - keep[-1]) * ln <= eps:
            continue
        keep.append(u)
    return keep


def _param_of_point(e, px, py):
    if isinstance(e, Seg):
        ex, ey = e.bx - e.ax, e.by - e.ay
        ll = ex * ex + ey * ey
        if ll == 0.0:
            return None
        return ((px - e.ax) * ex + (py - e.ay) * ey) / ll
    return e.param_of_angle(math.atan2(py - e.cy, px - e.cx), 1e-9 / max(e.r, 1e-300))


def _split_sides(a_els, b_els, eps):
    a_cuts = [[] for _ in a_els]
    b_cuts = [[] for _ in b_els]
    for i, ea in enumerate(a_els):
        ba = ea.bbox()
        for j, eb in enumerate(b_els):
            bb = eb.bbox()
            if (ba[2] < bb[0] - eps or bb[2] < ba[0] - eps
                    or ba[3] < bb[1] - eps or bb[3] < ba[1] - eps):
                continue
            if same_carrier(ea, eb, eps):
                for (px, py) in (eb.start(), eb.end()):
                    u = _param_of_point(ea, px, py)
                    if u is not None and 0.0 < u < 1.0:
                        a_cuts[i].append(u)
                for (px, py) in (ea.start(), ea.end()):
                    u = _param_of_point(eb, px, py)
                    if u is not None and 0.0 < u < 1.0:
                        b_cuts[j].append(u)
                continue
            for (u1, u2) in intersect_elements(ea, eb, eps):
                a_cuts[i].append(u1)
                b_cuts[j].append(u2)
    a_sub = []
    for e, cuts in zip(a_els, a_cuts):
        a_sub.extend(e.split(_interior_params(e, cuts, eps)))
    b_sub = []
    for e, cuts in zip(b_els, b_cuts):
        b_sub.extend(e.split(_interior_params(e, cuts, eps)))
    return a_sub, b_sub


def boolean(a: Region, b: Region, op: str, eps: float = 1e-9) -> Region:
    """Set operation on regions: op in {"union", "intersect", "difference"}."""
    if op not in ("union", "intersect", "difference"):
        raise ValueError(f"unknown boolean op {op!r}")
    a_els = list(a.elements())
    b_els = list(b.elements())
    if not a_els:
        return Region([]) if op != "union" else Region([lp for lp in b.loops])
    if not b_els:
        return Region([lp for lp in a.loops]) if op != "intersect" else Region([])
    a_sub, b_sub = _split_sides(a_els, b_els, eps)

    # pair up coincident fragments (same carrier, same midpoint)
    coincident_b = {}
    pair_same = {}
    for i, ea in enumerate(a_sub):
        mx, my = ea.point_at(0.5)
        for j, eb in enumerate(b_sub):
            if j in coincident_b or not same_carrier(ea, eb, eps):
                continue
            qx, qy = eb.point_at(0.5)
            if math.hypot(mx - qx, my - qy) <= eps:
                ta = ea.tangent_at(0.5)
                tb = eb.tangent_at(0.5)
                pair_same[i] = ta[0] * tb[0] + ta[1] * tb[1] > 0.0
                coincident_b[j] = i
                break

    kept = []
    for i, ea in enumerate(a_sub):
        if ea.length() <= eps:
            continue
        if i in pair_same:
            same = pair_same[i]
            if op == "union" and same:
                kept.append(ea)
            elif op == "intersect" and same:
                kept.append(ea)
            elif op == "difference" and not same:
                kept.append(ea)
            continue
        mx, my = ea.point_at(0.5)
        inside_b = winding_number(b_els, mx, my, eps) > 0
        if op == "intersect":
            if inside_b:
                kept.append(ea)
        else:
            if not inside_b:
                kept.append(ea)
    for j, eb in enumerate(b_sub):
        if j in coincident_b or eb.length() <= eps:
            continue
        mx, my = eb.point_at(0.5)
        inside_a = winding_number(a_els, mx, my, eps) > 0
        if op == "union":
            if not inside_a:
                kept.append(eb)
        else:
            if inside_a:
                kept.append(eb.reversed() if op == "difference" else eb)

    loops = stitch(kept, eps)
    return Region(loops)


def stitch(elements, eps):
    """Assemble directed fragments into closed loops.

    At junction vertices the walk picks the outgoing fragment reached first
    when rotating clockwise from the reversed incoming direction, which traces
    every face with its interior kept on the left.
    """
    els = [e for e in elements if e.length() > eps or
           (isinstance(e, Arc) and e.is_full_circle(1e-9))]
    loops = []
    singles = []
    for e in els:
        if isinstance(e, Arc) and e.is_full_circle(1e-9):
            singles.append(e)
    els = [e for e in els if not (isinstance(e, Arc) and e.is_full_circle(1e-9))]
    for e in singles:
        loops.append(ArcSegBoundary([e]))

    if not els:
        return loops

    # cluster endpoints into vertices with a hash grid
    pts = []
    for e in els:
        pts.append(e.start())
        pts.append(e.end())
    cell = max(eps, 1e-300) * 4.0
    grid = defaultdict(list)
    vid_of = [None] * len(pts)
    verts = []
    for k, (x, y) in enumerate(pts):
        ix, iy = math.floor(x / cell), math.floor(y / cell)
        found = None
        for gx in (ix - 1, ix, ix + 1):
            for gy in (iy - 1, iy, iy + 1):
                for vk in grid.get((gx, gy), ()):
                    vx, vy = verts[vk]
                    if math.hypot(vx - x, vy - y) <= eps:
                        found = vk
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            found = len(verts)
            verts.append((x, y))
            grid[(ix, iy)].append(found)
        vid_of[k] = found

    starts = [vid_of[2 * i] for i in range(len(els))]
    ends = [vid_of[2 * i + 1] for i in range(len(els))]
    out_of = defaultdict(list)
    for i, sv in enumerate(starts):
        out_of[sv].append(i)

    used = [False] * len(els)
    for i0 in range(len(els)):
        if used[i0]:
            continue
        chain = [i0]
        used[i0] = True
        start_v = starts[i0]
        cur = i0
        ok = True
        while ends[cur] != start_v:
            v = ends[cur]
            cands = [j for j in out_of[v] if not used[j]]
            if not cands:
                ok = False
                break
            if len(cands) == 1:
                nxt = cands[0]
            else:
                tin = els[cur].tangent_at(1.0)
                base = math.atan2(-tin[1], -tin[0])
                best, best_ang = None, math.inf
                for j in cands:
                    tout = els[j].tangent_at(0.0)
                    ang = norm_tau(base - math.atan2(tout[1], tout[0]))
                    if ang < 1e-9:
                        ang += TAU
                    if ang < best_ang:
                        best, best_ang = j, ang
                nxt = best
            chain.append(nxt)
            used[nxt] = True
            cur = nxt
            if len(chain) > len(els):
                ok = False
                break
        if not ok:
            total = sum(els[j].length() for j in chain)
            if total <= 100.0 * eps:
                continue
            raise GeometryError(f"fragment chain of length {total:.3g} did not close")
        loop = ArcSegBoundary([els[j] for j in chain])
        perim = sum(els[j].length() for j in chain)
        if abs(loop.signed_area()) <= 10.0 * eps * max(perim, eps):
            continue
        loops.append(loop)
    return loops


# ---------------------------------------------------------------------------
# ball unions and carving


@dataclass(frozen=True)
class BallUnion:
    """Union of committed metric balls, with its explicit boundary region."""

    metric: MetricSpec
    balls: tuple
    region: Region

    def area(self) -> float:
        return self.region.area()


def empty_union(metric: MetricSpec) -> BallUnion:
    return BallUnion(metric, (), Region([]))


def add_ball(u: BallUnion, ball: Ball, tag=None, eps: float = 1e-9) -> BallUnion:
    if ball.metric is not u.metric and ball.metric != u.metric:
        raise MetricMismatch("ball metric differs from union metric")
    br = ball_region(ball, tag)
    if u.region.is_empty():
        return BallUnion(u.metric, u.balls + (ball,), br)
    merged = boolean(u.region, br, "union", eps)
    return BallUnion(u.metric, u.balls + (ball,), merged)


def carve(ball: Ball, u: BallUnion, tag=None, eps: float = 1e-9) -> Region:
    """Part of the ball not already covered by the union."""
    if ball.metric is not u.metric and ball.metric != u.metric:
        raise MetricMismatch("ball metric differs from union metric")
    br = ball_region(ball, tag)
    if u.region.is_empty():
        return br
    return boolean(br, u.region, "difference", eps)


def partition_by_voronoi(region: Region, cells, eps: float = 1e-9):
    """Split a region along Voronoi cells: [(site_id, piece), ...].

    `cells` is an iterable of (site_id, cell_region).  Pieces of negligible
    area are dropped.
    """
    if region.is_empty():
        return []
    rb = region.bbox()
    out = []
    for sid, cell in cells:
        cb = cell.bbox()
        if rb[2] < cb[0] - eps or cb[2] < rb[0] - eps or rb[3] < cb[1] - eps or cb[3] < rb[1] - eps:
            continue
        piece = boolean(region, cell, "intersect", eps)
        if not piece.is_empty() and piece.area() > eps:
            out.append((sid, piece))
    return out
