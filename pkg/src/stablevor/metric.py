"""Distance metrics: Euclidean and polygonal convex distances.

A polygonal convex distance is induced by a convex unit ball S, symmetric
about the origin: d(a, b) scales b - a by the gauge of S.  Symmetry of S makes
the distance a metric; star-shaped Voronoi cells and segment-only bisectors
follow from convexity.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import DegenerateBisector, GeometryError, NotPolygonal
from .geom import TAU, Arc, ArcSegBoundary, ConvexPolygon, HalfPlane, Point, Seg, norm_tau

EUCLIDEAN = "euclidean"
POLYGONAL = "polygonal"


@dataclass(frozen=True)
class MetricSpec:
    kind: str
    unit_ball: ConvexPolygon | None = None

    def __post_init__(self):
        if self.kind == EUCLIDEAN:
            if self.unit_ball is not None:
                raise GeometryError("euclidean metric takes no unit ball")
            return
        if self.kind != POLYGONAL:
            raise GeometryError(f"unknown metric kind {self.kind!r}")
        if self.unit_ball is None:
            raise GeometryError("polygonal metric needs a unit ball")
        verts = self.unit_ball.vertices
        if len(verts) < 4 or len(verts) % 2 != 0:
            raise GeometryError("unit ball must be symmetric (even vertex count >= 4)")
        n = len(verts)
        for i in range(n // 2):
            v, w = verts[i], verts[i + n // 2]
            if math.hypot(v.x + w.x, v.y + w.y) > 1e-9:
                raise GeometryError("unit ball is not symmetric about the origin")

    @cached_property
    def _data(self):
        """Vertex directions, edge normals and supports, sorted by angle."""
        verts = list(self.unit_ball.vertices)
        angs = [norm_tau(math.atan2(v.y, v.x)) for v in verts]
        start = angs.index(min(angs))
        verts = verts[start:] + verts[:start]
        angs = angs[start:] + angs[:start]
        n = len(verts)
        vx = np.array([v.x for v in verts])
        vy = np.array([v.y for v in verts])
        nxt = np.roll(np.arange(n), -1)
        ex, ey = vx[nxt] - vx, vy[nxt] - vy
        ln = np.hypot(ex, ey)
        nx, ny = ey / ln, -ex / ln
        sup = nx * vx + ny * vy
        if np.any(sup <= 1e-12):
            raise GeometryError("origin is not strictly inside the unit ball")
        return {
            "vx": vx, "vy": vy, "angles": np.array(angs),
            "nx": nx, "ny": ny, "sup": sup, "n": n,
            "ball_area": 0.5 * float(np.sum(vx * vy[nxt] - vy * vx[nxt])),
        }

    def unit_area(self) -> float:
        """Area of the unit ball."""
        if self.kind == EUCLIDEAN:
            return math.pi
        return self._data["ball_area"]

    def circumradius(self) -> float:
        """Largest Euclidean norm on the unit ball boundary."""
        if self.kind == EUCLIDEAN:
            return 1.0
        d = self._data
        return float(np.max(np.hypot(d["vx"], d["vy"])))

    def gauge(self, wx: float, wy: float) -> float:
        if self.kind == EUCLIDEAN:
            return math.hypot(wx, wy)
        d = self._data
        return float(np.max((d["nx"] * wx + d["ny"] * wy) / d["sup"]))

    def gauge_many(self, wx, wy):
        """Vectorized gauge for arrays of displacement components."""
        if self.kind == EUCLIDEAN:
            return np.hypot(wx, wy)
        d = self._data
        wx = np.asarray(wx, dtype=float)
        wy = np.asarray(wy, dtype=float)
        vals = (np.multiply.outer(wx, d["nx"]) + np.multiply.outer(wy, d["ny"])) / d["sup"]
        return np.max(vals, axis=-1)

    def wedge_of(self, wx: float, wy: float) -> int:
        """Index of the unit-ball edge whose cone contains direction w."""
        d = self._data
        th = norm_tau(math.atan2(wy, wx))
        j = int(np.searchsorted(d["angles"], th, side="right")) - 1
        return j % d["n"]

    def wedge_plane(self, j: int):
        """(nx, ny, support) of unit-ball edge j."""
        d = self._data
        return float(d["nx"][j]), float(d["ny"][j]), float(d["sup"][j])

    def wedge_dirs(self, j: int):
        """Bounding vertex directions (q_j, q_{j+1}) of wedge j."""
        d = self._data
        k = (j + 1) % d["n"]
        return ((float(d["vx"][j]), float(d["vy"][j])),
                (float(d["vx"][k]), float(d["vy"][k])))


def euclidean() -> MetricSpec:
    return MetricSpec(EUCLIDEAN)


def polygonal(vertices) -> MetricSpec:
    pts = tuple(Point(float(x), float(y)) for (x, y) in vertices)
    return MetricSpec(POLYGONAL, ConvexPolygon(pts))


def linf_metric() -> MetricSpec:
    return polygonal([(1, -1), (1, 1), (-1, 1), (-1, -1)])


def l1_metric() -> MetricSpec:
    return polygonal([(1, 0), (0, 1), (-1, 0), (0, -1)])


def distance(m: MetricSpec, a: Point, b: Point) -> float:
    return m.gauge(b.x - a.x, b.y - a.y)


def spokes(m: MetricSpec):
    """Unit-ball vertex directions as angles, counterclockwise."""
    if m.kind != POLYGONAL:
        raise NotPolygonal("spokes are defined for polygonal metrics only")
    return [float(a) for a in m._data["angles"]]


@dataclass(frozen=True)
class Ball:
    """Metric ball: all points within distance scale of center."""

    metric: MetricSpec
    center: Point
    scale: float

    def __post_init__(self):
        if not (math.isfinite(self.scale) and self.scale >= 0.0):
            raise GeometryError(f"bad ball scale {self.scale}")

    def area(self) -> float:
        return self.metric.unit_area() * self.scale * self.scale

    def contains(self, p: Point, eps: float = 0.0) -> bool:
        return self.metric.gauge(p.x - self.center.x, p.y - self.center.y) <= self.scale + eps

    def bbox(self):
        cx, cy, r = self.center.x, self.center.y, self.scale
        if self.metric.kind == EUCLIDEAN:
            return (cx - r, cy - r, cx + r, cy + r)
        d = self.metric._data
        return (cx + r * float(d["vx"].min()), cy + r * float(d["vy"].min()),
                cx + r * float(d["vx"].max()), cy + r * float(d["vy"].max()))

    def boundary_loop(self, tag=None) -> ArcSegBoundary:
        cx, cy, r = self.center.x, self.center.y, self.scale
        if self.metric.kind == EUCLIDEAN:
            return ArcSegBoundary([Arc(cx, cy, r, 0.0, TAU, tag)])
        d = self.metric._data
        n = d["n"]
        els = []
        for j in range(n):
            k = (j + 1) % n
            t = tag if not isinstance(tag, tuple) else tag + (j,)
            els.append(Seg(cx + r * d["vx"][j], cy + r * d["vy"][j],
                           cx + r * d["vx"][k], cy + r * d["vy"][k], t))
        return ArcSegBoundary(els)


# ---------------------------------------------------------------------------
# bisectors


def bisector(m: MetricSpec, s: Point, t: Point, tol: Tolerances = DEFAULT_TOL):
    """Locus of distance ties between sites s and t.

    Euclidean: the perpendicular-bisector half-plane containing s.
    Polygonal: (points, wedge_pairs) polyline with s on its left, traced far
    beyond the sites; wedge_pairs[i] is the (s-edge, t-edge) pair active on
    segment i, which also names the exact supporting line of that piece.
    """
    if m.kind == EUCLIDEAN:
        dx, dy = t.x - s.x, t.y - s.y
        dn = math.hypot(dx, dy)
        if dn == 0.0:
            raise GeometryError("bisector of coincident points")
        nx, ny = dx / dn, dy / dn
        mx, my = 0.5 * (s.x + t.x), 0.5 * (s.y + t.y)
        return HalfPlane(nx, ny, nx * mx + ny * my)
    return trace_bisector(m, s, t, tol=tol)


def _degenerate_pair(m: MetricSpec, s: Point, t: Point, tol: Tolerances) -> bool:
    d = m._data
    wx, wy = t.x - s.x, t.y - s.y
    wn = math.hypot(wx, wy)
    vx, vy = d["vx"], d["vy"]
    nxt = np.roll(np.arange(d["n"]), -1)
    ex, ey = vx[nxt] - vx, vy[nxt] - vy
    cr = np.abs(wx * ey - wy * ex) / (wn * np.hypot(ex, ey))
    return bool(np.any(cr <= tol.eps_unit * 10))


def trace_bisector(m: MetricSpec, s: Point, t: Point, extent: float | None = None,
                   tol: Tolerances = DEFAULT_TOL):
    """Trace the polygonal-metric bisector polyline, s kept on the left."""
    if m.kind != POLYGONAL:
        raise NotPolygonal("trace_bisector needs a polygonal metric")
    if _degenerate_pair(m, s, t, tol):
        if not tol.resolve_degenerate_bisectors:
            raise DegenerateBisector(
                f"site pair ({s.x},{s.y})-({t.x},{t.y}) is parallel to a unit-ball edge")
        # approximate clockwise-most tie resolution by a tiny clockwise nudge
        ang = -1e-11
        ca, sa = math.cos(ang), math.sin(ang)
        t = Point(s.x + ca * (t.x - s.x) - sa * (t.y - s.y),
                  s.y + sa * (t.x - s.x) + ca * (t.y - s.y))
    if extent is None:
        extent = 8.0 * (1.0 + math.hypot(t.x - s.x, t.y - s.y)
                        + math.hypot(s.x, s.y) + math.hypot(t.x, t.y))
    x0 = Point(0.5 * (s.x + t.x), 0.5 * (s.y + t.y))
    je0 = m.wedge_of(x0.x - s.x, x0.y - s.y)
    le0 = m.wedge_of(x0.x - t.x, x0.y - t.y)

    fwd_pts, fwd_pairs = _trace_dir(m, s, t, x0, je0, le0, +1.0, extent, tol)
    bwd_pts, bwd_pairs = _trace_dir(m, s, t, x0, je0, le0, -1.0, extent, tol)
    pts = [(p.x, p.y) for p in reversed(bwd_pts)] + [(x0.x, x0.y)] + [(p.x, p.y) for p in fwd_pts]
    pairs = list(reversed(bwd_pairs)) + fwd_pairs
    return pts, pairs


def _pair_line(m: MetricSpec, s: Point, t: Point, je: int, le: int):
    """Line (gx, gy, c) of the tie between s-wedge je and t-wedge le."""
    njx, njy, cj = m.wedge_plane(je)
    nlx, nly, cl = m.wedge_plane(le)
    gx = njx / cj - nlx / cl
    gy = njy / cj - nly / cl
    c = (njx * s.x + njy * s.y) / cj - (nlx * t.x + nly * t.y) / cl
    return gx, gy, c


def _trace_dir(m, s, t, x0, je, le, sign, extent, tol):
    pts = []
    pairs = []
    x, y = x0.x, x0.y
    d = m._data
    n = d["n"]
    max_steps = 8 * n + 32
    for _ in range(max_steps):
        gx, gy, _c = _pair_line(m, s, t, je, le)
        gn = math.hypot(gx, gy)
        if gn <= tol.eps_unit:
            raise DegenerateBisector("tie region has interior (coincident gauges)")
        ux, uy = sign * (-gy / gn), sign * (gx / gn)
        # first exit from the two active wedges along direction u
        best = math.inf
        cross_info = None
        for (site, wj) in ((s, je), (t, le)):
            (q0x, q0y), (q1x, q1y) = m.wedge_dirs(wj)
            for (qx, qy, which) in ((q0x, q0y, -1), (q1x, q1y, +1)):
                # wedge boundary ray: cross(q, x + tau*u - site) = 0
                den = qx * uy - qy * ux
                if abs(den) <= 1e-15:
                    continue
                num = -(qx * (y - site.y) - qy * (x - site.x))
                tau = num / den
                if tau > 1e-13 and tau < best:
                    best = tau
                    cross_info = (site is s, which)
        far = 4.0 * extent
        if not math.isfinite(best) or best > far:
            # unbounded piece: emit a far endpoint and stop
            pts.append(Point(x + far * ux, y + far * uy))
            pairs.append((je, le))
            break
        x, y = x + best * ux, y + best * uy
        pts.append(Point(x, y))
        pairs.append((je, le))
        on_s, which = cross_info
        if on_s:
            je = (je + which) % n
        else:
            le = (le + which) % n
        if math.hypot(x - x0.x, y - x0.y) > extent:
            break
    else:
        raise GeometryError("bisector trace did not terminate")
    return pts, pairs


def dominance_half_loop(m: MetricSpec, s: Point, t: Point, center: Point, half: float,
                        seg_tag_fn=None, box_tag_fn=None, tol: Tolerances = DEFAULT_TOL):
    """Closed dominance region of s over t inside a centered square.

    The square must be large enough that the bisector enters and leaves it
    exactly once; the working boxes used by the solver satisfy this.
    """
    pts, pairs = trace_bisector(m, s, t, extent=4.0 * half + 8.0, tol=tol)
    corners = [(center.x - half, center.y - half), (center.x + half, center.y - half),
               (center.x + half, center.y + half), (center.x - half, center.y + half)]
    clipped, kept_pairs = _clip_polyline_to_box(pts, pairs, corners)
    if len(clipped) < 2:
        # bisector misses the square entirely: dominance is all or nothing
        mid = Point(center.x, center.y)
        win = m.gauge(mid.x - s.x, mid.y - s.y) <= m.gauge(mid.x - t.x, mid.y - t.y)
        els = []
        for i in range(4):
            a, b = corners[i], corners[(i + 1) % 4]
            tg = box_tag_fn(i) if box_tag_fn else None
            els.append(Seg(a[0], a[1], b[0], b[1], tg))
        return ArcSegBoundary(els) if win else None
    els = []
    for i in range(len(clipped) - 1):
        a, b = clipped[i], clipped[i + 1]
        tg = seg_tag_fn(kept_pairs[i]) if seg_tag_fn else None
        els.append(Seg(a[0], a[1], b[0], b[1], tg))
    # close along the square boundary, counterclockwise (s stays on the left)
    exit_pt, entry_pt = clipped[-1], clipped[0]
    walk, walk_sides = _walk_box(corners, exit_pt, entry_pt)
    for i in range(len(walk) - 1):
        a, b = walk[i], walk[i + 1]
        if math.hypot(b[0] - a[0], b[1] - a[1]) <= tol.eps_join:
            continue
        tg = box_tag_fn(walk_sides[i]) if box_tag_fn else None
        els.append(Seg(a[0], a[1], b[0], b[1], tg))
    return ArcSegBoundary(els)


def _clip_polyline_to_box(pts, pairs, corners):
    xmin, ymin = corners[0]
    xmax, ymax = corners[2]

    def inside(p):
        return xmin <= p[0] <= xmax and ymin <= p[1] <= ymax

    def clip_seg(a, b):
        # Liang-Barsky: parameter range of [a, b] inside the box
        t0, t1 = 0.0, 1.0
        dx, dy = b[0] - a[0], b[1] - a[1]
        for p, q in ((-dx, a[0] - xmin), (dx, xmax - a[0]),
                     (-dy, a[1] - ymin), (dy, ymax - a[1])):
            if p == 0.0:
                if q < 0.0:
                    return None
                continue
            r = q / p
            if p < 0.0:
                t0 = max(t0, r)
            else:
                t1 = min(t1, r)
        if t0 > t1:
            return None
        return ((a[0] + t0 * dx, a[1] + t0 * dy), (a[0] + t1 * dx, a[1] + t1 * dy))

    out_pts = []
    out_pairs = []
    for i in range(len(pts) - 1):
        piece = clip_seg(pts[i], pts[i + 1])
        if piece is None:
            continue
        a, b = piece
        if not out_pts:
            out_pts.append(a)
        out_pts.append(b)
        out_pairs.append(pairs[i])
    return out_pts, out_pairs


def _walk_box(corners, start, stop):
    """Counterclockwise walk along the square boundary from start to stop.

    Returns (points, sides); sides[i] is the box side (0 bottom, 1 right,
    2 top, 3 left) carrying the segment points[i] -> points[i+1].
    """

    def station(p):
        xmin, ymin = corners[0]
        xmax, ymax = corners[2]
        tolr = 1e-7 * max(xmax - xmin, 1.0)
        if abs(p[1] - ymin) <= tolr:
            return 0, p[0] - xmin
        if abs(p[0] - xmax) <= tolr:
            return 1, p[1] - ymin
        if abs(p[1] - ymax) <= tolr:
            return 2, xmax - p[0]
        if abs(p[0] - xmin) <= tolr:
            return 3, ymax - p[1]
        raise GeometryError("polyline endpoint is not on the box boundary")

    side0, s0 = station(start)
    side1, s1 = station(stop)
    walk = [start]
    sides = []
    side = side0
    guard = 0
    while True:
        guard += 1
        if guard > 6:
            raise GeometryError("box walk failed")
        if side == side1 and (side != side0 or s1 >= s0 - 1e-12 or guard > 1):
            walk.append(stop)
            sides.append(side)
            return walk, sides
        sides.append(side)
        side = (side + 1) % 4
        walk.append(corners[side])
