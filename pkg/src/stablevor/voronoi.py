"""Nearest-site partitions of a working box with carrier-tagged edges.

Every boundary piece of a cell records the geometric carrier it lies on:
``("bis", i, j)`` for the perpendicular bisector of sites i and j,
``("bis", i, j, je, le)`` for the straight piece of a polygonal-norm tie
locus active on wedge pair (je, le), and ``("bbox", k)`` for side k of the
working box.  Downstream gluing relies on exact tag equality, so tags are
canonicalized here (lower site id first, wedge pair swapped along).
"""

from __future__ import annotations

import math

from .config import DEFAULT_TOL, Tolerances
from .errors import DuplicateSites, GeometryError, UnknownSite
from .geom import ArcSegBoundary, HalfPlane, Point, Seg
from .metric import EUCLIDEAN, MetricSpec, dominance_half_loop
from .regions import Region, boolean


def bisector_tag(i: int, j: int, pair=None) -> tuple:
    """Canonical carrier tag for the tie locus between sites i and j.

    `pair` is the active wedge pair in trace order (wedge around i, wedge
    around j); it swaps together with the ids so both orientations of the
    same piece produce the same tag.
    """
    if i == j:
        raise ValueError("bisector of a site with itself")
    if i > j:
        i, j = j, i
        if pair is not None:
            pair = (pair[1], pair[0])
    if pair is None:
        return ("bis", int(i), int(j))
    return ("bis", int(i), int(j), int(pair[0]), int(pair[1]))


def box_tag(k: int) -> tuple:
    return ("bbox", int(k))


def box_loop(bounds, tagged: bool = True) -> ArcSegBoundary:
    """The working box as a counterclockwise tagged segment loop.

    Side order matches the station convention used when closing dominance
    loops: 0 bottom, 1 right, 2 top, 3 left.
    """
    xmin, ymin, xmax, ymax = bounds
    cs = ((xmin, ymin), (xmax, ymin), (xmax, ymax), (xmin, ymax))
    els = []
    for k in range(4):
        a, b = cs[k], cs[(k + 1) % 4]
        els.append(Seg(a[0], a[1], b[0], b[1], box_tag(k) if tagged else None))
    return ArcSegBoundary(els)


def perp_bisector_halfplane(s: Point, t: Point) -> HalfPlane:
    """Half-plane of points at least as close to s as to t (Euclidean)."""
    dx, dy = t.x - s.x, t.y - s.y
    dn = math.hypot(dx, dy)
    if dn == 0.0:
        raise GeometryError("bisector of coincident points")
    nx, ny = dx / dn, dy / dn
    off = nx * 0.5 * (s.x + t.x) + ny * 0.5 * (s.y + t.y)
    return HalfPlane(nx, ny, off)


def _clip_tagged(verts, tags, h: HalfPlane, new_tag, eps: float):
    """Sutherland-Hodgman clip of a convex tagged loop against h.n*x <= h.offset.

    tags[k] names the carrier of the edge verts[k] -> verts[k+1]; pieces cut
    off are closed with a single edge tagged `new_tag`.  Points within eps of
    the line count as inside so shared vertices survive in both neighbors.
    """
    n = len(verts)
    vals = [h.nx * x + h.ny * y - h.offset for (x, y) in verts]
    out_v: list = []
    out_t: list = []
    for k in range(n):
        k2 = (k + 1) % n
        vi, vj = vals[k], vals[k2]
        pi, pj = verts[k], verts[k2]
        ti = tags[k]
        if vi <= eps:
            if vj <= eps:
                out_v.append(pi)
                out_t.append(ti)
            elif vi < -eps:
                out_v.append(pi)
                out_t.append(ti)
                u = vi / (vi - vj)
                out_v.append((pi[0] + u * (pj[0] - pi[0]), pi[1] + u * (pj[1] - pi[1])))
                out_t.append(new_tag)
            else:
                # pi sits on the cut line and the edge leaves: the boundary
                # continues along the cut from pi itself
                out_v.append(pi)
                out_t.append(new_tag)
        else:
            if vj < -eps:
                u = vi / (vi - vj)
                out_v.append((pi[0] + u * (pj[0] - pi[0]), pi[1] + u * (pj[1] - pi[1])))
                out_t.append(ti)
            # vj within the band: pj emitted as inside on the next edge
    # drop zero-length edges (crossings that landed on existing vertices);
    # the preceding edge absorbs the dropped vertex, staying on its carrier
    # to within eps
    m = len(out_v)
    if m < 3:
        return [], []
    keep_v: list = []
    keep_t: list = []
    for k in range(m):
        nxt = out_v[(k + 1) % m]
        if math.hypot(nxt[0] - out_v[k][0], nxt[1] - out_v[k][1]) > eps:
            keep_v.append(out_v[k])
            keep_t.append(out_t[k])
    if len(keep_v) < 3:
        return [], []
    return keep_v, keep_t


def _cell_mentions(reg: Region, own: int, other: int) -> bool:
    a, b = (own, other) if own < other else (other, own)
    for loop in reg.loops:
        for e in loop.elements:
            t = e.tag
            if t is not None and t[0] == "bis" and t[1] == a and t[2] == b:
                return True
    return False


class VoronoiDiagram:
    """Nearest-site partition of a box under a Euclidean or polygonal norm.

    Sites are addressed by integer id.  Removing a site invalidates all
    cached cells; cells are rebuilt from scratch on the next query, which
    keeps total work quadratic for the one-removal-per-round usage pattern.
    """

    def __init__(self, metric: MetricSpec, sites: dict[int, Point], bounds,
                 tol: Tolerances = DEFAULT_TOL):
        self.metric = metric
        self.bounds = tuple(float(v) for v in bounds)
        xmin, ymin, xmax, ymax = self.bounds
        if not (xmax > xmin and ymax > ymin):
            raise GeometryError("degenerate working box")
        self.tol = tol
        self._scale = max(xmax - xmin, ymax - ymin)
        self._eps = tol.eps_join * max(1.0, self._scale)
        self._sites: dict[int, Point] = {}
        for sid, p in sites.items():
            self._sites[int(sid)] = p
        items = sorted(self._sites.items())
        for a in range(len(items)):
            ia, pa = items[a]
            if not (xmin <= pa.x <= xmax and ymin <= pa.y <= ymax):
                raise GeometryError(f"site {ia} lies outside the working box")
            for b in range(a + 1, len(items)):
                ib, pb = items[b]
                if math.hypot(pa.x - pb.x, pa.y - pb.y) <= 1e-12 * self._scale:
                    raise DuplicateSites(f"sites {ia} and {ib} coincide")
        self._cache: dict[int, Region] = {}

    @property
    def ids(self) -> list[int]:
        return sorted(self._sites)

    def __len__(self) -> int:
        return len(self._sites)

    def site(self, i: int) -> Point:
        try:
            return self._sites[i]
        except KeyError:
            raise UnknownSite(f"no site with id {i}") from None

    def remove_site(self, i: int) -> None:
        if i not in self._sites:
            raise UnknownSite(f"no site with id {i}")
        del self._sites[i]
        # only neighbors of the removed site change; their cells carry a
        # bisector tag naming the pair, so staleness is a tag scan
        self._cache.pop(i, None)
        stale = [k for k, reg in self._cache.items()
                 if _cell_mentions(reg, k, i)]
        for k in stale:
            del self._cache[k]

    def cell(self, i: int) -> Region:
        if i not in self._sites:
            raise UnknownSite(f"no site with id {i}")
        got = self._cache.get(i)
        if got is None:
            if self.metric.kind == EUCLIDEAN:
                got = self._euclid_cell(i)
            else:
                got = self._poly_cell(i)
            self._cache[i] = got
        return got

    def cells(self) -> dict[int, Region]:
        return {i: self.cell(i) for i in self.ids}

    # -- builders ----------------------------------------------------------

    def _euclid_cell(self, i: int) -> Region:
        s = self._sites[i]
        xmin, ymin, xmax, ymax = self.bounds
        verts = [(xmin, ymin), (xmax, ymin), (xmax, ymax), (xmin, ymax)]
        tags = [box_tag(0), box_tag(1), box_tag(2), box_tag(3)]
        eps = 1e-12 * self._scale
        others = sorted((math.hypot(p.x - s.x, p.y - s.y), j)
                        for j, p in self._sites.items() if j != i)
        for d, j in others:
            r2 = max((vx - s.x) ** 2 + (vy - s.y) ** 2 for vx, vy in verts)
            if 0.25 * d * d > r2:
                break  # this and all farther bisectors miss the cell
            h = perp_bisector_halfplane(s, self._sites[j])
            verts, tags = _clip_tagged(verts, tags, h, bisector_tag(i, j), eps)
            if not verts:
                raise GeometryError(f"cell of site {i} clipped away entirely")
        n = len(verts)
        els = [Seg(verts[k][0], verts[k][1], verts[(k + 1) % n][0],
                   verts[(k + 1) % n][1], tags[k]) for k in range(n)]
        return Region([ArcSegBoundary(els)])

    def _poly_cell(self, i: int) -> Region:
        s = self._sites[i]
        xmin, ymin, xmax, ymax = self.bounds
        if abs((xmax - xmin) - (ymax - ymin)) > 1e-9 * self._scale:
            raise GeometryError("polygonal cells need a square working box")
        center = Point(0.5 * (xmin + xmax), 0.5 * (ymin + ymax))
        half = 0.5 * (xmax - xmin)
        cell = Region([box_loop(self.bounds)])
        g = self.metric.gauge
        others = sorted((g(p.x - s.x, p.y - s.y), j)
                        for j, p in self._sites.items() if j != i)
        for d, j in others:
            reach = max(g(e.ax - s.x, e.ay - s.y)
                        for loop in cell.loops for e in loop.elements)
            if 0.5 * d > reach * (1.0 + 1e-12):
                break  # the whole cell already beats this and farther sites
            t = self._sites[j]

            def seg_tag(pair, _i=i, _j=j):
                return bisector_tag(_i, _j, pair)

            dom = dominance_half_loop(self.metric, s, t, center, half,
                                      seg_tag_fn=seg_tag, box_tag_fn=box_tag,
                                      tol=self.tol)
            if dom is None:
                raise GeometryError(f"cell of site {i} clipped away entirely")
            cell = boolean(cell, Region([dom]), "intersect", self._eps)
            if not cell.loops:
                raise GeometryError(f"cell of site {i} clipped away entirely")
        return cell
