"""Assemble a site's assigned pieces into one region with exact boundaries.

Every piece boundary element carries a tag naming its geometric carrier.
Grouping fragments by tag and counting signed coverage along each carrier
separates true region boundary (net traversal +-1) from internal seams
between pieces (net 0, the two sides cancel).  Surviving intervals are
re-emitted directly on the canonical carrier geometry, so glued edges sit on
their bisector lines and ball circles to machine precision regardless of how
much clipping produced the fragments.
"""

from __future__ import annotations

import math

from .config import DEFAULT_TOL, Tolerances
from .errors import GeometryError, TopologyError
from .geom import TAU, Arc, Point, Seg, norm_tau
from .metric import EUCLIDEAN, MetricSpec, _pair_line
from .regions import Region, stitch


class CarrierIndex:
    """Resolves carrier tags to canonical geometry for one solved instance."""

    def __init__(self, metric: MetricSpec, points: dict[int, Point],
                 radii: dict[int, float], bounds):
        self.metric = metric
        self.points = points
        self.radii = radii
        self.bounds = bounds

    def resolve(self, tag):
        """("line", p0x, p0y, ux, uy) or ("circle", cx, cy, r) for a tag."""
        kind = tag[0]
        if kind == "bbox":
            xmin, ymin, xmax, ymax = self.bounds
            k = tag[1]
            anchors = ((xmin, ymin, 1.0, 0.0), (xmax, ymin, 0.0, 1.0),
                       (xmax, ymax, -1.0, 0.0), (xmin, ymax, 0.0, -1.0))
            px, py, ux, uy = anchors[k]
            return ("line", px, py, ux, uy)
        if kind == "ball":
            j = tag[1]
            c = self.points[j]
            r = self.radii[j]
            if self.metric.kind == EUCLIDEAN:
                return ("circle", c.x, c.y, r)
            d = self.metric._data
            k = tag[2]
            k2 = (k + 1) % d["n"]
            ax = c.x + r * float(d["vx"][k])
            ay = c.y + r * float(d["vy"][k])
            bx = c.x + r * float(d["vx"][k2])
            by = c.y + r * float(d["vy"][k2])
            ln = math.hypot(bx - ax, by - ay)
            return ("line", ax, ay, (bx - ax) / ln, (by - ay) / ln)
        if kind == "bis":
            i, j = tag[1], tag[2]
            s, t = self.points[i], self.points[j]
            if len(tag) == 3:
                dx, dy = t.x - s.x, t.y - s.y
                dn = math.hypot(dx, dy)
                return ("line", 0.5 * (s.x + t.x), 0.5 * (s.y + t.y),
                        -dy / dn, dx / dn)
            gx, gy, c = _pair_line(self.metric, s, t, tag[3], tag[4])
            gn2 = gx * gx + gy * gy
            gn = math.sqrt(gn2)
            return ("line", gx * c / gn2, gy * c / gn2, -gy / gn, gx / gn)
        raise GeometryError(f"unknown carrier tag {tag!r}")


def glue_pieces(pieces, carriers: CarrierIndex, eps: float) -> Region:
    """Fuse piece regions into one region with exact carrier boundaries.

    Raises TopologyError when coverage counting finds a carrier traversed
    twice in the same direction, or when the surviving edges do not close
    into loops within the allowed gap.
    """
    groups: dict[tuple, list] = {}
    for piece in pieces:
        for loop in piece.loops:
            for e in loop.elements:
                if e.tag is None:
                    raise GeometryError("untagged boundary element in glue")
                groups.setdefault(e.tag, []).append(e)
    out = []
    for tag, frags in groups.items():
        carrier = carriers.resolve(tag)
        if carrier[0] == "line":
            out.extend(_emit_line(tag, carrier, frags, eps))
        else:
            out.extend(_emit_circle(tag, carrier, frags, eps))
    try:
        loops = stitch(out, eps)
    except GeometryError as exc:
        raise TopologyError(f"glued boundary does not close: {exc}") from exc
    return Region(loops)


def _cluster(values, eps):
    """Sorted cluster representatives of a 1-d point set."""
    vs = sorted(values)
    reps = []
    start = 0
    for i in range(1, len(vs) + 1):
        if i == len(vs) or vs[i] - vs[i - 1] > eps:
            reps.append(sum(vs[start:i]) / (i - start))
            start = i
    return reps


def _emit_line(tag, carrier, frags, eps):
    _, px, py, ux, uy = carrier
    spans = []
    for e in frags:
        if not isinstance(e, Seg):
            raise GeometryError(f"arc fragment on straight carrier {tag!r}")
        ta = (e.ax - px) * ux + (e.ay - py) * uy
        tb = (e.bx - px) * ux + (e.by - py) * uy
        spans.append((ta, tb))
    reps = _cluster([t for ab in spans for t in ab], eps)
    edges = []
    run_start = None
    run_net = 0
    for k in range(len(reps) - 1):
        lo, hi = reps[k], reps[k + 1]
        mid = 0.5 * (lo + hi)
        net = 0
        for ta, tb in spans:
            if min(ta, tb) < mid < max(ta, tb):
                net += 1 if tb > ta else -1
        if abs(net) > 1:
            raise TopologyError(
                f"carrier {tag!r} traversed {net} times over one interval")
        if net != run_net:
            if run_net != 0:
                edges.append(_line_seg(tag, px, py, ux, uy, run_start, lo, run_net))
            run_start = lo
            run_net = net
    if run_net != 0:
        edges.append(_line_seg(tag, px, py, ux, uy, run_start, reps[-1], run_net))
    return edges


def _line_seg(tag, px, py, ux, uy, t0, t1, net):
    if net < 0:
        t0, t1 = t1, t0
    return Seg(px + t0 * ux, py + t0 * uy, px + t1 * ux, py + t1 * uy, tag)


def _emit_circle(tag, carrier, frags, eps):
    _, cx, cy, r = carrier
    eps_ang = eps / max(r, eps)
    spans = []   # (start_angle, length, sign) covering CCW from start
    cuts = []
    whole = 0
    for e in frags:
        if isinstance(e, Seg):
            raise GeometryError(f"straight fragment on circle carrier {tag!r}")
        if e.is_full_circle(1e-9):
            whole += 1 if e.sweep > 0 else -1
            continue
        a0 = e.a0
        a1 = e.a0 + e.sweep
        if e.sweep > 0:
            spans.append((norm_tau(a0), e.sweep, 1))
        else:
            spans.append((norm_tau(a1), -e.sweep, -1))
        cuts.append(norm_tau(a0))
        cuts.append(norm_tau(a1))
    if not cuts:
        if whole == 0:
            return []
        if abs(whole) > 1:
            raise TopologyError(f"carrier {tag!r} covered twice")
        return [Arc(cx, cy, r, 0.0, TAU if whole > 0 else -TAU, tag)]
    reps = _cluster(cuts, eps_ang)
    # wrap-around: first and last rep may be the same cut
    if len(reps) > 1 and (reps[0] + TAU) - reps[-1] <= eps_ang:
        merged = 0.5 * (reps[0] + reps[-1] - TAU)
        reps = [merged] + reps[1:-1]
    nets = []
    m = len(reps)
    for k in range(m):
        lo = reps[k]
        hi = reps[(k + 1) % m] if k + 1 < m else reps[0] + TAU
        mid = 0.5 * (lo + hi)
        net = whole
        for start, length, sign in spans:
            if norm_tau(mid - start) < length:
                net += sign
        if abs(net) > 1:
            raise TopologyError(
                f"carrier {tag!r} traversed {net} times over one interval")
        nets.append(net)
    if all(n == nets[0] for n in nets):
        if nets[0] == 0:
            return []
        return [Arc(cx, cy, r, 0.0, TAU if nets[0] > 0 else -TAU, tag)]
    # walk the intervals starting at a genuine run boundary, with angles
    # unwrapped past 2*pi so runs crossing zero stay contiguous
    pivot = next(k for k in range(m) if nets[k] != nets[k - 1])
    bound = [reps[(pivot + j) % m] + (TAU if pivot + j >= m else 0.0)
             for j in range(m + 1)]
    edges = []
    run_net = nets[pivot]
    run_start = bound[0]
    for j in range(1, m + 1):
        cur = nets[(pivot + j) % m] if j < m else None
        if cur != run_net:
            if run_net != 0:
                edges.append(_circle_arc(tag, cx, cy, r, run_start, bound[j], run_net))
            run_net = cur
            run_start = bound[j]
    return edges


def _circle_arc(tag, cx, cy, r, a_start, a_end, net):
    sweep = a_end - a_start
    if net > 0:
        return Arc(cx, cy, r, a_start, sweep, tag)
    return Arc(cx, cy, r, a_end, -sweep, tag)
