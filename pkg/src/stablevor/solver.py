"""Ordering solver: size-constrained stable partitions of the plane.

Sites eat territory in rounds.  Each round every live site answers one
radius query (the smallest ball around it that would capture its remaining
appetite, given everything already committed); the site with the smallest
answer commits that ball, the newly covered territory is split among the
live nearest-site cells and subtracted from their appetites, and the chosen
site retires.  After n rounds every site has exactly its appetite, no pair
(site, point) prefers each other over their assignments, and gluing the
per-round pieces yields each site's final region with exact carrier
boundaries.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import DuplicateSites, InfeasibleState
from .geom import Arc, Point, element_max_dist
from .glue import CarrierIndex, glue_pieces
from .metric import EUCLIDEAN, Ball, MetricSpec
from .primitive import free_region, solve_radius
from .regions import (Region, add_ball, carve, empty_union,
                      partition_by_voronoi)
from .voronoi import VoronoiDiagram


@dataclass(frozen=True)
class Site:
    id: int
    point: Point
    appetite: float


@dataclass
class IterationLog:
    index: int
    chosen: int
    radius: float
    estimates: dict[int, float]
    covered_area: float


@dataclass
class SolveStats:
    primitive_calls: int = 0
    area_evals: int = 0
    free_rebuilds: int = 0
    elapsed: float = 0.0


@dataclass
class StableDiagram:
    metric: MetricSpec
    sites: dict[int, Site]
    bounds: tuple
    tol: Tolerances
    order: list[int]
    radii: dict[int, float]
    regions: dict[int, Region]
    pieces: dict[int, list[Region]]
    history: list[IterationLog]
    stats: SolveStats

    @property
    def scale(self) -> float:
        xmin, ymin, xmax, ymax = self.bounds
        return max(xmax - xmin, ymax - ymin)

    def domain_area(self) -> float:
        return sum(reg.area() for reg in self.regions.values())

    def domain_bbox(self) -> tuple:
        """Tight box around the union of all regions."""
        boxes = [reg.bbox() for reg in self.regions.values()]
        return (min(b[0] for b in boxes), min(b[1] for b in boxes),
                max(b[2] for b in boxes), max(b[3] for b in boxes))

    def _dist_matrix(self, xs, ys):
        ids = self.order
        dist = np.empty((len(ids), xs.size), dtype=float)
        for k, sid in enumerate(ids):
            c = self.sites[sid].point
            if self.metric.kind == EUCLIDEAN:
                dist[k] = np.hypot(xs.ravel() - c.x, ys.ravel() - c.y)
            else:
                dist[k] = self.metric.gauge_many(xs.ravel() - c.x,
                                                 ys.ravel() - c.y)
        return dist

    def classify_many(self, xs, ys, inflate: float = 1.0):
        """Pointwise owner rule: nearest site among those whose committed
        ball strictly contains the point; -1 where no ball does.

        Stability makes this agree with region membership away from
        boundaries; inflate rescales the radii for negative controls.
        """
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        dist = self._dist_matrix(xs, ys)
        rad = np.array([self.radii[sid] for sid in self.order]) * inflate
        masked = np.where(dist < rad[:, None], dist, np.inf)
        k = np.argmin(masked, axis=0)
        hit = np.isfinite(masked[k, np.arange(masked.shape[1])])
        ids = np.array(self.order)
        out = np.where(hit, ids[k], -1)
        return out.reshape(xs.shape)

    def classify_point(self, x: float, y: float) -> int:
        return int(self.classify_many([x], [y])[0])

    def classify_point_detail(self, x: float, y: float):
        """(owner, ambiguous): ambiguous marks points within eps_join of a
        distance tie or of a deciding ball boundary."""
        xs = np.asarray([x], dtype=float)
        ys = np.asarray([y], dtype=float)
        dist = self._dist_matrix(xs, ys)[:, 0]
        eps = self.tol.eps_join * max(1.0, self.scale)
        rad = np.array([self.radii[sid] for sid in self.order])
        masked = np.where(dist < rad, dist, np.inf)
        k = int(np.argmin(masked))
        if not math.isfinite(masked[k]):
            return -1, bool((np.abs(dist - rad) <= eps).any())
        others = np.delete(masked, k)
        amb = bool((np.abs(dist - rad) <= eps).any()
                   or (others.size and others.min() - masked[k] <= eps))
        return int(self.order[k]), amb

    def region_owner_many(self, xs, ys):
        """Owner by actual region membership; -1 for unmatched points."""
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        out = np.full(xs.shape, -1, dtype=int)
        eps = self.tol.eps_join * max(1.0, self.scale)
        for sid in self.order:
            open_idx = np.flatnonzero(out == -1)
            if open_idx.size == 0:
                break
            c = self.sites[sid].point
            r = self.radii[sid] + eps
            if self.metric.kind == EUCLIDEAN:
                near = ((xs[open_idx] - c.x) ** 2 + (ys[open_idx] - c.y) ** 2
                        <= r * r)
            else:
                near = self.metric.gauge_many(xs[open_idx] - c.x,
                                              ys[open_idx] - c.y) <= r
            cand = open_idx[near]
            if cand.size == 0:
                continue
            inside = self.regions[sid].contains_many(xs[cand], ys[cand])
            out[cand[inside]] = sid
        return out

    def bounding_radius(self, sid: int) -> float:
        return self.radii[sid]

    def order_index(self, sid: int) -> int:
        return self.order.index(sid)

    def face_count(self) -> int:
        """Connected components summed over all site regions."""
        return sum(len(reg.faces()) for reg in self.regions.values())


def working_box(metric: MetricSpec, sites, tol: Tolerances = DEFAULT_TOL):
    """Square certain to contain every region.

    A site's ball is fully matched territory, so its area never exceeds the
    total appetite; that caps the gauge radius at sqrt(total / unit_area)
    and the Euclidean reach at circumradius times that.  The square sits at
    the site centroid with that reach (doubled, times the safety factor)
    added beyond the maximum pairwise spread.
    """
    pts = [s.point for s in sites]
    total = sum(s.appetite for s in sites)
    cx = sum(p.x for p in pts) / len(pts)
    cy = sum(p.y for p in pts) / len(pts)
    spread = 0.0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            spread = max(spread, math.hypot(pts[i].x - pts[j].x,
                                            pts[i].y - pts[j].y))
    reach = metric.circumradius() * math.sqrt(total / metric.unit_area())
    half = spread + tol.bbox_safety * 2.0 * reach
    return (cx - half, cy - half, cx + half, cy + half)


def _reach(metric: MetricSpec, reg: Region, p: Point) -> float:
    best = 0.0
    if metric.kind == EUCLIDEAN:
        for e in reg.elements():
            best = max(best, element_max_dist(e, p.x, p.y))
    else:
        g = metric.gauge
        for e in reg.elements():
            best = max(best, g(e.ax - p.x, e.ay - p.y),
                       g(e.bx - p.x, e.by - p.y))
    return best


def _boxes_overlap(a, b, eps):
    return not (a[2] < b[0] - eps or b[2] < a[0] - eps or
                a[3] < b[1] - eps or b[3] < a[1] - eps)


def solve(metric: MetricSpec, sites, tol: Tolerances = DEFAULT_TOL,
          bounds=None, threads: int = 1) -> StableDiagram:
    """Compute the stable size-constrained partition for the given sites.

    threads > 1 farms the independent radius queries of one round out to a
    thread pool; results are folded back in submission order so the chosen
    site (and hence the whole run) is identical to the serial one.
    """
    sites = list(sites)
    if not sites:
        raise ValueError("no sites given")
    seen = set()
    for s in sites:
        if s.id in seen:
            raise DuplicateSites(f"site id {s.id} appears twice")
        seen.add(s.id)
        if not (s.appetite > 0.0 and math.isfinite(s.appetite)):
            raise ValueError(f"site {s.id} has invalid appetite {s.appetite}")
    if bounds is None:
        bounds = working_box(metric, sites, tol)
    by_id = {s.id: s for s in sites}
    spts = {s.id: s.point for s in sites}
    scale = max(bounds[2] - bounds[0], bounds[3] - bounds[1])
    eps = tol.eps_join * max(1.0, scale)

    vd = VoronoiDiagram(metric, spts, bounds, tol)
    remaining = {s.id: s.appetite for s in sites}
    far = {s.id: 0.0 for s in sites}
    union = empty_union(metric)
    pieces: dict[int, list[Region]] = {s.id: [] for s in sites}
    # per-site cache of (cell object, balls seen, free region); valid while
    # the cell object survives and no newer ball touches the cell's box
    fcache: dict[int, tuple] = {}
    stats = SolveStats()
    history: list[IterationLog] = []
    order: list[int] = []
    radii: dict[int, float] = {}
    t_start = time.perf_counter()

    def _query(sid):
        cell = vd.cell(sid)
        cached = fcache.get(sid)
        freg = None
        if cached is not None and cached[0] is cell:
            cb = cell.bbox()
            if all(not _boxes_overlap(b.bbox(), cb, eps)
                   for b in union.balls[cached[1]:]):
                freg = cached[2]
        rebuilt = freg is None
        if rebuilt:
            freg = free_region(cell, union.balls, eps)
        # committed balls are already subtracted, so the query sees the
        # free region as its cell with nothing left to remove
        ans = solve_radius(metric, freg, spts[sid], remaining[sid],
                           (), tol, scale)
        return sid, (cell, len(union.balls), freg), ans, rebuilt

    pool = (ThreadPoolExecutor(max_workers=threads)
            if threads and threads > 1 else None)

    for it in range(len(sites)):
        live = list(vd.ids)
        results = pool.map(_query, live) if pool else map(_query, live)
        best_est = math.inf
        best_sid = None
        ests: dict[int, float] = {}
        for sid, entry, ans, rebuilt in results:
            fcache[sid] = entry
            if rebuilt:
                stats.free_rebuilds += 1
            stats.primitive_calls += 1
            stats.area_evals += ans.evals
            est = max(ans.radius, far[sid])
            ests[sid] = est
            if est < best_est or (est == best_est and
                                  (best_sid is None or sid < best_sid)):
                best_est = est
                best_sid = sid
        if not math.isfinite(best_est):
            raise InfeasibleState(
                "no site can fulfil its appetite inside the working box")
        sid = best_sid
        ball = Ball(metric, spts[sid], best_est)
        newly = carve(ball, union, tag=("ball", sid), eps=eps)
        union = add_ball(union, ball, tag=("ball", sid), eps=eps)
        for tid, piece in partition_by_voronoi(
                newly, ((t, vd.cell(t)) for t in vd.ids), eps):
            remaining[tid] -= piece.area()
            pieces[tid].append(piece)
            far[tid] = max(far[tid], _reach(metric, piece, spts[tid]))
        order.append(sid)
        radii[sid] = best_est
        vd.remove_site(sid)
        fcache.pop(sid, None)
        history.append(IterationLog(it, sid, best_est, ests,
                                    union.region.area()))
    if pool:
        pool.shutdown()

    carriers = CarrierIndex(metric, spts, radii, bounds)
    regions = {sid: glue_pieces(pieces[sid], carriers, eps)
               for sid in by_id}
    stats.elapsed = time.perf_counter() - t_start
    return StableDiagram(metric, by_id, tuple(bounds), tol, order, radii,
                         regions, pieces, history, stats)


# ---------------------------------------------------------------------------
# verification helpers


def area_residuals(diag: StableDiagram) -> dict[int, float]:
    """Relative region-area error against each site's appetite."""
    out = {}
    for sid, site in diag.sites.items():
        out[sid] = abs(diag.regions[sid].area() - site.appetite) / site.appetite
    return out


def edge_residuals(diag: StableDiagram) -> float:
    """Largest distance from any boundary point to its claimed carrier."""
    carriers = CarrierIndex(diag.metric, {i: s.point for i, s in diag.sites.items()},
                            diag.radii, diag.bounds)
    worst = 0.0
    for reg in diag.regions.values():
        for e in reg.elements():
            c = carriers.resolve(e.tag)
            for u in (0.0, 0.5, 1.0):
                x, y = e.point_at(u)
                if c[0] == "line":
                    _, px, py, ux, uy = c
                    worst = max(worst, abs((x - px) * uy - (y - py) * ux))
                else:
                    _, cx, cy, r = c
                    worst = max(worst, abs(math.hypot(x - cx, y - cy) - r))
    return worst


def sample_stability(diag: StableDiagram, n_samples: int = 100000,
                     rng=None, margin: float = None):
    """Sample matched points and count blocking pairs.

    Assignment comes from actual region membership (not the radius rule, so
    the check stays independent).  A pair (site t, point x) blocks when x
    sits strictly closer to t than to its assigned site and strictly inside
    t's committed ball, both by more than the margin.  Returns
    (checked, violations).
    """
    if rng is None:
        rng = np.random.default_rng(0)
    if margin is None:
        margin = 1e-7 * diag.scale
    xmin, ymin, xmax, ymax = diag.domain_bbox()
    checked = 0
    violations = 0
    ids = sorted(diag.sites)
    cxs = np.array([diag.sites[i].point.x for i in ids])
    cys = np.array([diag.sites[i].point.y for i in ids])
    rs = np.array([diag.radii[i] for i in ids])
    row = {i: k for k, i in enumerate(ids)}
    while checked < n_samples:
        m = max(4096, n_samples)
        xs = rng.uniform(xmin, xmax, m)
        ys = rng.uniform(ymin, ymax, m)
        owner = diag.region_owner_many(xs, ys)
        hit = owner >= 0
        xs, ys, owner = xs[hit], ys[hit], owner[hit]
        if xs.size == 0:
            continue
        take = min(xs.size, n_samples - checked)
        xs, ys, owner = xs[:take], ys[:take], owner[:take]
        if diag.metric.kind == EUCLIDEAN:
            d = np.hypot(xs[:, None] - cxs[None, :], ys[:, None] - cys[None, :])
        else:
            d = np.stack([diag.metric.gauge_many(xs - cxs[k], ys - cys[k])
                          for k in range(len(ids))], axis=1)
        own = d[np.arange(take), [row[o] for o in owner]]
        blocking = (d < rs[None, :] - margin) & (d < own[:, None] - margin)
        violations += int(np.any(blocking, axis=1).sum())
        checked += take
    return checked, violations


def count_complexity(diag: StableDiagram):
    """(faces, edges, vertices) of the diagram as a plane subdivision.

    Edges shared by two regions count once (matched by carrier tag and
    midpoint).  A full circle is one edge with no vertices.  Tangency points
    appear as element endpoints and therefore split edges.
    """
    eps = 10.0 * diag.tol.eps_join * max(1.0, diag.scale)

    def q(x, y):
        return (round(x / eps), round(y / eps))

    edges = set()
    verts = set()
    for reg in diag.regions.values():
        for e in reg.elements():
            xm, ym = e.point_at(0.5)
            edges.add((e.tag, q(xm, ym)))
            if isinstance(e, Arc) and e.is_full_circle(1e-9):
                continue
            verts.add(q(*e.start()))
            verts.add(q(*e.end()))
    faces = diag.face_count()
    return faces, len(edges), len(verts)
