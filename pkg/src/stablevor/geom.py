"""Exact low-level geometry: points, segments, circular arcs, closed boundaries.

Curved boundaries are always stored as supporting circle plus angle interval,
never as sampled polylines, so that downstream checks against bounding circles
and bisectors stay at floating-point residual level.

Angles are radians; arcs carry a start angle and a signed sweep (positive is
counterclockwise).  A full circle is a single arc with |sweep| == 2*pi.
"""

import math
from dataclasses import dataclass

from .errors import CoincidentCircles, GeometryError, OpenBoundary, SelfIntersecting

TAU = 2.0 * math.pi


def wrap_pi(a: float) -> float:
    """Wrap angle to (-pi, pi]."""
    a = math.fmod(a, TAU)
    if a <= -math.pi:
        a += TAU
    elif a > math.pi:
        a -= TAU
    return a


def norm_tau(a: float) -> float:
    """Wrap angle to [0, 2*pi)."""
    a = math.fmod(a, TAU)
    return a + TAU if a < 0 else a


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError(f"non-finite point ({self.x}, {self.y})")

    def dist(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Disk:
    center: Point
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius >= 0.0):
            raise GeometryError(f"bad disk radius {self.radius}")

    def area(self) -> float:
        return math.pi * self.radius * self.radius

    def contains(self, p: Point, eps: float = 0.0) -> bool:
        return p.dist(self.center) <= self.radius + eps


@dataclass(frozen=True)
class HalfPlane:
    """Closed half-plane {p : nx*p.x + ny*p.y <= offset} with unit normal."""

    nx: float
    ny: float
    offset: float

    def __post_init__(self):
        n = math.hypot(self.nx, self.ny)
        if abs(n - 1.0) > 1e-9:
            raise GeometryError(f"half-plane normal not unit length: {n}")

    def value(self, x: float, y: float) -> float:
        return self.nx * x + self.ny * y - self.offset

    def contains(self, p: Point, eps: float = 0.0) -> bool:
        return self.value(p.x, p.y) <= eps


def shoelace(pts) -> float:
    """Signed area of a polygon given as [(x, y), ...]."""
    s = 0.0
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        s += x0 * y1 - y0 * x1
    return 0.5 * s


@dataclass(frozen=True)
class ConvexPolygon:
    """Convex polygon, vertices in counterclockwise order."""

    vertices: tuple

    def __post_init__(self):
        vs = self.vertices
        if len(vs) < 3:
            raise GeometryError("convex polygon needs at least 3 vertices")
        n = len(vs)
        for i in range(n):
            ax, ay = vs[i].x, vs[i].y
            bx, by = vs[(i + 1) % n].x, vs[(i + 1) % n].y
            cx, cy = vs[(i + 2) % n].x, vs[(i + 2) % n].y
            cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
            if cross < -1e-12 * (abs(bx - ax) + abs(by - ay) + 1.0):
                raise GeometryError("polygon is not convex counterclockwise")

    def area(self) -> float:
        return shoelace([(v.x, v.y) for v in self.vertices])

    def contains(self, p: Point, eps: float = 1e-12) -> bool:
        vs = self.vertices
        n = len(vs)
        for i in range(n):
            a, b = vs[i], vs[(i + 1) % n]
            if (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) < -eps:
                return False
        return True


# ---------------------------------------------------------------------------
# boundary elements


class Seg:
    """Directed line segment element of a boundary loop."""

    __slots__ = ("ax", "ay", "bx", "by", "tag")

    def __init__(self, ax, ay, bx, by, tag=None):
        self.ax = ax
        self.ay = ay
        self.bx = bx
        self.by = by
        self.tag = tag

    def __repr__(self):
        return f"Seg(({self.ax:.6g},{self.ay:.6g})->({self.bx:.6g},{self.by:.6g}))"

    def start(self):
        return (self.ax, self.ay)

    def end(self):
        return (self.bx, self.by)

    def point_at(self, u):
        return (self.ax + u * (self.bx - self.ax), self.ay + u * (self.by - self.ay))

    def tangent_at(self, u):
        dx, dy = self.bx - self.ax, self.by - self.ay
        n = math.hypot(dx, dy)
        return (dx / n, dy / n) if n > 0 else (1.0, 0.0)

    def length(self):
        return math.hypot(self.bx - self.ax, self.by - self.ay)

    def green(self):
        return 0.5 * (self.ax * self.by - self.ay * self.bx)

    def reversed(self):
        return Seg(self.bx, self.by, self.ax, self.ay, self.tag)

    def split(self, us):
        """Split at ascending interior params, returning consecutive pieces."""
        pts = [self.start()] + [self.point_at(u) for u in us] + [self.end()]
        return [Seg(pts[i][0], pts[i][1], pts[i + 1][0], pts[i + 1][1], self.tag)
                for i in range(len(pts) - 1)]

    def bbox(self):
        return (min(self.ax, self.bx), min(self.ay, self.by),
                max(self.ax, self.bx), max(self.ay, self.by))


class Arc:
    """Directed circular arc: supporting circle plus start angle and sweep."""

    __slots__ = ("cx", "cy", "r", "a0", "sweep", "tag")

    def __init__(self, cx, cy, r, a0, sweep, tag=None):
        self.cx = cx
        self.cy = cy
        self.r = r
        self.a0 = a0
        self.sweep = sweep
        self.tag = tag

    def __repr__(self):
        return (f"Arc(c=({self.cx:.6g},{self.cy:.6g}), r={self.r:.6g}, "
                f"a0={self.a0:.6g}, sweep={self.sweep:.6g})")

    def is_full_circle(self, eps=1e-12):
        return abs(abs(self.sweep) - TAU) <= eps

    def angle_at(self, u):
        return self.a0 + u * self.sweep

    def start(self):
        return self.point_at(0.0)

    def end(self):
        return self.point_at(1.0)

    def point_at(self, u):
        a = self.angle_at(u)
        return (self.cx + self.r * math.cos(a), self.cy + self.r * math.sin(a))

    def tangent_at(self, u):
        a = self.angle_at(u)
        if self.sweep >= 0:
            return (-math.sin(a), math.cos(a))
        return (math.sin(a), -math.cos(a))

    def length(self):
        return abs(self.sweep) * self.r

    def green(self):
        # integral of (x dy - y dx) / 2 along the arc
        a0 = self.a0
        a1 = self.a0 + self.sweep
        return 0.5 * (self.r * self.r * self.sweep
                      + self.cx * self.r * (math.sin(a1) - math.sin(a0))
                      + self.cy * self.r * (math.cos(a0) - math.cos(a1)))

    def reversed(self):
        return Arc(self.cx, self.cy, self.r, self.a0 + self.sweep, -self.sweep, self.tag)

    def split(self, us):
        bounds = [0.0] + list(us) + [1.0]
        out = []
        for i in range(len(bounds) - 1):
            u0, u1 = bounds[i], bounds[i + 1]
            out.append(Arc(self.cx, self.cy, self.r, self.angle_at(u0),
                           (u1 - u0) * self.sweep, self.tag))
        return out

    def param_of_angle(self, phi, eps=1e-12):
        """Param in [0, 1] where the arc passes angle phi, or None."""
        if self.sweep >= 0:
            t = norm_tau(phi - self.a0)
        else:
            t = norm_tau(self.a0 - phi)
        span = abs(self.sweep)
        if t <= span + eps:
            return min(t, span) / span if span > 0 else 0.0
        if t >= TAU - eps:
            return 0.0
        return None

    def bbox(self):
        xs = [self.start()[0], self.end()[0]]
        ys = [self.start()[1], self.end()[1]]
        for phi, dx, dy in ((0.0, self.r, 0.0), (math.pi / 2, 0.0, self.r),
                            (math.pi, -self.r, 0.0), (3 * math.pi / 2, 0.0, -self.r)):
            if self.param_of_angle(phi) is not None:
                xs.append(self.cx + dx)
                ys.append(self.cy + dy)
        return (min(xs), min(ys), max(xs), max(ys))


# ---------------------------------------------------------------------------
# closed boundary loops


class ArcSegBoundary:
    """Closed loop of Seg/Arc elements, counterclockwise for positive area."""

    __slots__ = ("elements",)

    def __init__(self, elements):
        self.elements = list(elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def is_closed(self, eps: float) -> bool:
        els = self.elements
        if not els:
            return False
        if len(els) == 1 and isinstance(els[0], Arc):
            return els[0].is_full_circle(1e-9)
        for i, e in enumerate(els):
            nx, ny = els[(i + 1) % len(els)].start()
            ex, ey = e.end()
            if math.hypot(nx - ex, ny - ey) > eps:
                return False
        return True

    def signed_area(self) -> float:
        return sum(e.green() for e in self.elements)

    def reversed(self):
        return ArcSegBoundary([e.reversed() for e in reversed(self.elements)])

    def bbox(self):
        bs = [e.bbox() for e in self.elements]
        return (min(b[0] for b in bs), min(b[1] for b in bs),
                max(b[2] for b in bs), max(b[3] for b in bs))

    def a_point_on(self):
        return self.elements[0].point_at(0.5)


def signed_area(loop: ArcSegBoundary, eps: float = 1e-9, strict: bool = False) -> float:
    """Signed area of a closed loop; raises on open or self-crossing input."""
    if not loop.is_closed(eps):
        raise OpenBoundary("boundary loop does not close")
    if strict:
        els = loop.elements
        for i in range(len(els)):
            for j in range(i + 1, len(els)):
                for ui, uj in intersect_elements(els[i], els[j], eps):
                    interior_i = eps < ui * els[i].length() and (1 - ui) * els[i].length() > eps
                    interior_j = eps < uj * els[j].length() and (1 - uj) * els[j].length() > eps
                    if interior_i or (interior_j and j != i + 1 and not (i == 0 and j == len(els) - 1)):
                        raise SelfIntersecting("boundary loop crosses itself")
    return loop.signed_area()


# ---------------------------------------------------------------------------
# intersections


def circle_circle_intersections(a: Disk, b: Disk, eps: float = 1e-9):
    """Intersection points of two circles (0, 1, or 2 points).

    Tangency within eps collapses to a single point.  Raises
    CoincidentCircles when the circles are the same circle.
    """
    d = a.center.dist(b.center)
    if d <= eps and abs(a.radius - b.radius) <= eps:
        raise CoincidentCircles("circles coincide")
    angs = _circle_circle_angles(a.center.x, a.center.y, a.radius,
                                 b.center.x, b.center.y, b.radius, eps)
    pts = [Point(a.center.x + a.radius * math.cos(t),
                 a.center.y + a.radius * math.sin(t)) for t in angs]
    return pts


def _circle_circle_angles(ax, ay, ar, bx, by, br, eps):
    """Angles on circle a of its intersections with circle b."""
    dx, dy = bx - ax, by - ay
    d = math.hypot(dx, dy)
    if d < 1e-300:
        return []
    # cos of angle between (b-a) and intersection direction, from the law of cosines
    k = (ar * ar + d * d - br * br) / (2.0 * ar * d)
    base = math.atan2(dy, dx)
    if abs(k) > 1.0:
        # allow near-tangency within eps of touching
        gap = min(abs(d - (ar + br)), abs(d - abs(ar - br)))
        if gap <= eps:
            return [base if k > 0 else base + math.pi]
        return []
    if abs(k) >= 1.0 - 1e-15:
        return [base if k > 0 else base + math.pi]
    off = math.acos(k)
    return [base - off, base + off]


def _seg_line_params(e: Seg, nx, ny, off):
    """Params where segment crosses line n.x = off (0 or 1 values)."""
    va = nx * e.ax + ny * e.ay - off
    vb = nx * e.bx + ny * e.by - off
    if (va > 0) == (vb > 0):
        return []
    den = va - vb
    if den == 0.0:
        return []
    return [va / den]


def seg_circle_params(e: Seg, cx, cy, r):
    """Segment params (ascending) where |point - c| = r."""
    ex, ey = e.bx - e.ax, e.by - e.ay
    wx, wy = e.ax - cx, e.ay - cy
    A = ex * ex + ey * ey
    if A == 0.0:
        return []
    B = wx * ex + wy * ey
    C = wx * wx + wy * wy - r * r
    disc = B * B - A * C
    if disc <= 0.0:
        return []
    sq = math.sqrt(disc)
    return sorted(t for t in ((-B - sq) / A, (-B + sq) / A) if 0.0 <= t <= 1.0)


def intersect_elements(e1, e2, eps):
    """Proper crossing params [(u1, u2), ...]; empty for same-carrier pairs."""
    s1, s2 = isinstance(e1, Seg), isinstance(e2, Seg)
    if s1 and s2:
        return _isect_seg_seg(e1, e2, eps)
    if s1 and not s2:
        return [(u1, u2) for (u2, u1) in _isect_arc_seg(e2, e1, eps)]
    if not s1 and s2:
        return _isect_arc_seg(e1, e2, eps)
    return _isect_arc_arc(e1, e2, eps)


def _isect_seg_seg(e1, e2, eps):
    d1x, d1y = e1.bx - e1.ax, e1.by - e1.ay
    d2x, d2y = e2.bx - e2.ax, e2.by - e2.ay
    den = d1x * d2y - d1y * d2x
    scale = math.hypot(d1x, d1y) * math.hypot(d2x, d2y)
    if abs(den) <= 1e-14 * scale:
        return []
    wx, wy = e2.ax - e1.ax, e2.ay - e1.ay
    u1 = (wx * d2y - wy * d2x) / den
    u2 = (wx * d1y - wy * d1x) / den
    l1, l2 = e1.length(), e2.length()
    if -eps <= u1 * l1 and (u1 - 1.0) * l1 <= eps and -eps <= u2 * l2 and (u2 - 1.0) * l2 <= eps:
        return [(min(max(u1, 0.0), 1.0), min(max(u2, 0.0), 1.0))]
    return []


def _isect_arc_seg(arc, seg, eps):
    out = []
    for t in seg_circle_params(seg, arc.cx, arc.cy, arc.r):
        px, py = seg.point_at(t)
        u = arc.param_of_angle(math.atan2(py - arc.cy, px - arc.cx),
                               eps / max(arc.r, 1e-300))
        if u is not None:
            out.append((u, t))
    return out


def _isect_arc_arc(a1, a2, eps):
    if same_circle(a1, a2, eps):
        return []
    out = []
    for t in _circle_circle_angles(a1.cx, a1.cy, a1.r, a2.cx, a2.cy, a2.r, eps):
        px = a1.cx + a1.r * math.cos(t)
        py = a1.cy + a1.r * math.sin(t)
        u1 = a1.param_of_angle(t, eps / max(a1.r, 1e-300))
        u2 = a2.param_of_angle(math.atan2(py - a2.cy, px - a2.cx),
                               eps / max(a2.r, 1e-300))
        if u1 is not None and u2 is not None:
            out.append((u1, u2))
    return out


def same_circle(a1: Arc, a2: Arc, eps) -> bool:
    return (math.hypot(a1.cx - a2.cx, a1.cy - a2.cy) <= eps
            and abs(a1.r - a2.r) <= eps)


def same_line(e1: Seg, e2: Seg, eps) -> bool:
    d1x, d1y = e1.bx - e1.ax, e1.by - e1.ay
    n1 = math.hypot(d1x, d1y)
    if n1 == 0.0:
        return False
    d1x, d1y = d1x / n1, d1y / n1
    for px, py in ((e2.ax, e2.ay), (e2.bx, e2.by)):
        if abs((px - e1.ax) * d1y - (py - e1.ay) * d1x) > eps:
            return False
    return True


def same_carrier(e1, e2, eps) -> bool:
    if isinstance(e1, Seg) and isinstance(e2, Seg):
        return same_line(e1, e2, eps)
    if isinstance(e1, Arc) and isinstance(e2, Arc):
        return same_circle(e1, e2, eps)
    return False


# ---------------------------------------------------------------------------
# polygon clipping


def clip_polygon_halfplane(pts, nx, ny, off, eps=0.0):
    """Sutherland-Hodgman clip of polygon [(x, y), ...] to n.p <= off.

    A vertex within eps of the line counts as lying on it: it is kept and
    spawns no crossing. Crossings are emitted for every strict sign change,
    even when t rounds to an endpoint, so a clip line grazing a vertex or
    running along an edge cannot silently drop area.
    """
    if not pts:
        return []
    vals = [nx * x + ny * y - off for (x, y) in pts]
    side = [0 if abs(v) <= eps else (1 if v > 0 else -1) for v in vals]
    out = []
    n = len(pts)
    for i in range(n):
        j = (i + 1) % n
        if side[i] <= 0:
            out.append(pts[i])
        if side[i] * side[j] < 0:
            t = vals[i] / (vals[i] - vals[j])
            out.append((pts[i][0] + t * (pts[j][0] - pts[i][0]),
                        pts[i][1] + t * (pts[j][1] - pts[i][1])))
    return out


def split_polygon_by_line(pts, nx, ny, off, eps=0.0):
    """Both sides of a polygon split by line n.p = off: (below, above).

    Single pass with shared vertex classification: a vertex within eps of
    the line counts as lying on it and is emitted to both sides without
    spawning a crossing, so the two sides always partition the input even
    when the line grazes vertices or whole edges up to rounding noise.
    Running two independent half-plane clips does not have that property.
    """
    if not pts:
        return [], []
    vals = [nx * x + ny * y - off for (x, y) in pts]
    side = [0 if abs(v) <= eps else (1 if v > 0 else -1) for v in vals]
    below, above = [], []
    n = len(pts)
    for i in range(n):
        j = (i + 1) % n
        p = pts[i]
        if side[i] <= 0:
            below.append(p)
        if side[i] >= 0:
            above.append(p)
        if side[i] * side[j] < 0:
            t = vals[i] / (vals[i] - vals[j])
            q = (p[0] + t * (pts[j][0] - p[0]),
                 p[1] + t * (pts[j][1] - p[1]))
            below.append(q)
            above.append(q)
    return below, above


def clip_convex_by_halfplanes(halfplanes, bbox: ConvexPolygon):
    """Intersect a bounding convex polygon with half-planes; None if empty."""
    pts = [(v.x, v.y) for v in bbox.vertices]
    for hp in halfplanes:
        pts = clip_polygon_halfplane(pts, hp.nx, hp.ny, hp.offset)
        if len(pts) < 3:
            return None
    pts = dedup_ring(pts, 1e-12)
    if len(pts) < 3 or abs(shoelace(pts)) < 1e-24:
        return None
    return ConvexPolygon(tuple(Point(x, y) for (x, y) in pts))


def dedup_ring(pts, eps):
    out = []
    for p in pts:
        if not out or math.hypot(p[0] - out[-1][0], p[1] - out[-1][1]) > eps:
            out.append(p)
    if len(out) > 1 and math.hypot(out[0][0] - out[-1][0], out[0][1] - out[-1][1]) <= eps:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# disk-clipped areas (fan decomposition from the disk center)
#
# For any closed boundary sum of per-element slices equals the area of the
# region intersected with the disk centered at s: each element contributes the
# signed area of its radial fan from s clipped to the disk.  Parts of the
# element inside the disk contribute their plain fan area, parts outside
# contribute a circular sector of the same net view angle.


def _piece_inside_disk(e, t0, t1, sx, sy, r):
    """Whether the crossing-free piece [t0, t1] of e lies inside disk(s, r).

    Two samples guard against grazing contact: a tangency can place one
    sample exactly on the circle, never both.
    """
    for w in (0.5, 0.25):
        xm, ym = e.point_at(t0 + w * (t1 - t0))
        d = math.hypot(xm - sx, ym - sy)
        if d > r:
            return False
        if d < r:
            return True
    return False


def disk_slice_seg(sx, sy, r, e: Seg):
    """(area, dphi): slice of one segment; dphi is the net outside view angle."""
    ts = [0.0] + seg_circle_params(e, sx, sy, r) + [1.0]
    area = 0.0
    dphi = 0.0
    for i in range(len(ts) - 1):
        t0, t1 = ts[i], ts[i + 1]
        if t1 - t0 <= 0.0:
            continue
        x0, y0 = e.point_at(t0)
        x1, y1 = e.point_at(t1)
        if _piece_inside_disk(e, t0, t1, sx, sy, r):
            area += 0.5 * ((x0 - sx) * (y1 - sy) - (y0 - sy) * (x1 - sx))
        else:
            d = wrap_pi(math.atan2(y1 - sy, x1 - sx) - math.atan2(y0 - sy, x0 - sx))
            area += 0.5 * r * r * d
            dphi += d
    return area, dphi


def disk_slice_arc(sx, sy, r, e: Arc):
    """(area, dphi): slice of one arc element against disk(s, r)."""
    ux, uy = e.cx - sx, e.cy - sy
    # split params where the arc crosses the clipping circle
    us = []
    for t in _circle_circle_angles(e.cx, e.cy, e.r, sx, sy, r, 0.0):
        u = e.param_of_angle(t)
        if u is not None and 1e-12 < u < 1.0 - 1e-12:
            us.append(u)
    us.sort()
    bounds = [0.0] + us + [1.0]
    umag = math.hypot(ux, uy)
    area = 0.0
    dphi = 0.0
    for i in range(len(bounds) - 1):
        u0, u1 = bounds[i], bounds[i + 1]
        if u1 - u0 <= 0.0:
            continue
        t0, t1 = e.angle_at(u0), e.angle_at(u1)
        if _piece_inside_disk(e, u0, u1, sx, sy, r):
            area += 0.5 * (e.r * e.r * (t1 - t0)
                           + e.r * (ux * (math.sin(t1) - math.sin(t0))
                                    + uy * (math.cos(t0) - math.cos(t1))))
        else:
            if umag < e.r:
                # s is inside the supporting circle: view angle advances with t
                g0 = math.atan2(uy * math.cos(t0) - ux * math.sin(t0),
                                e.r + ux * math.cos(t0) + uy * math.sin(t0))
                g1 = math.atan2(uy * math.cos(t1) - ux * math.sin(t1),
                                e.r + ux * math.cos(t1) + uy * math.sin(t1))
                d = (t1 - t0) + (g1 - g0)
            else:
                x0, y0 = e.point_at(u0)
                x1, y1 = e.point_at(u1)
                d = wrap_pi(math.atan2(y1 - sy, x1 - sx) - math.atan2(y0 - sy, x0 - sx))
            area += 0.5 * r * r * d
            dphi += d
    return area, dphi


def disk_clipped_area(elements, sx, sy, r):
    """(area, darea_dr) of region(elements) intersected with disk(s, r)."""
    area = 0.0
    dphi = 0.0
    for e in elements:
        if isinstance(e, Seg):
            a, d = disk_slice_seg(sx, sy, r, e)
        else:
            a, d = disk_slice_arc(sx, sy, r, e)
        area += a
        dphi += d
    return area, r * dphi


def polygon_disk_intersection_area(poly: ConvexPolygon, disk: Disk) -> float:
    """Closed-form area of polygon intersected with a disk."""
    vs = poly.vertices
    sx, sy, r = disk.center.x, disk.center.y, disk.radius
    total = 0.0
    for i in range(len(vs)):
        a, b = vs[i], vs[(i + 1) % len(vs)]
        total += disk_slice_seg(sx, sy, r, Seg(a.x, a.y, b.x, b.y))[0]
    return total


def element_min_max_dist(e, sx, sy):
    """(min, max) Euclidean distance from s to points of the element."""
    if isinstance(e, Seg):
        d0 = math.hypot(e.ax - sx, e.ay - sy)
        d1 = math.hypot(e.bx - sx, e.by - sy)
        lo, hi = min(d0, d1), max(d0, d1)
        ex, ey = e.bx - e.ax, e.by - e.ay
        ll = ex * ex + ey * ey
        if ll > 0.0:
            t = ((sx - e.ax) * ex + (sy - e.ay) * ey) / ll
            if 0.0 < t < 1.0:
                px, py = e.ax + t * ex, e.ay + t * ey
                lo = min(lo, math.hypot(px - sx, py - sy))
        return lo, hi
    d = math.hypot(e.cx - sx, e.cy - sy)
    p0, p1 = e.point_at(0.0), e.point_at(1.0)
    lo = min(math.hypot(p0[0] - sx, p0[1] - sy), math.hypot(p1[0] - sx, p1[1] - sy))
    hi = max(math.hypot(p0[0] - sx, p0[1] - sy), math.hypot(p1[0] - sx, p1[1] - sy))
    toward = math.atan2(sy - e.cy, sx - e.cx)
    if e.param_of_angle(toward) is not None:
        lo = min(lo, abs(d - e.r))
    if e.param_of_angle(toward + math.pi) is not None:
        hi = max(hi, d + e.r)
    return lo, hi


def element_max_dist(e, sx, sy):
    """Largest Euclidean distance from s to a boundary element."""
    return element_min_max_dist(e, sx, sy)[1]
