"""Line-delimited text formats for instances and diagrams.

Human-diffable, fixture-friendly: one record per line, numbers written as
shortest round-trip decimals (Python repr), so parse(serialize(x)) is exact
on every numeric field.
"""

from __future__ import annotations

import math

from .config import DEFAULT_TOL, Tolerances
from .errors import ParseError
from .geom import Arc, ArcSegBoundary, Point, Seg
from .instances import Instance
from .metric import EUCLIDEAN, MetricSpec, euclidean, polygonal
from .regions import Region
from .solver import Site, SolveStats, StableDiagram

INSTANCE_MAGIC = "stablevor-instance v1"
DIAGRAM_MAGIC = "stablevor-diagram v1"


def _fmt(x: float) -> str:
    return repr(float(x))


def _metric_line(metric: MetricSpec) -> str:
    if metric.kind == EUCLIDEAN:
        return "metric euclidean"
    toks = []
    for v in metric.unit_ball.vertices:
        toks.append(_fmt(v.x))
        toks.append(_fmt(v.y))
    return "metric polygonal " + " ".join(toks)


def _parse_metric(toks, ln: int) -> MetricSpec:
    if not toks:
        raise ParseError(f"line {ln}: empty metric record")
    if toks[0] == "euclidean":
        return euclidean()
    if toks[0] == "polygonal":
        vals = [_float(t, ln) for t in toks[1:]]
        if len(vals) < 6 or len(vals) % 2:
            raise ParseError(f"line {ln}: polygonal metric needs >= 3 vertex pairs")
        return polygonal([(vals[i], vals[i + 1]) for i in range(0, len(vals), 2)])
    raise ParseError(f"line {ln}: unknown metric kind {toks[0]!r}")


def _float(tok: str, ln: int) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise ParseError(f"line {ln}: expected a number, got {tok!r}") from None
    if not math.isfinite(v):
        raise ParseError(f"line {ln}: non-finite number {tok!r}")
    return v


def _int(tok: str, ln: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"line {ln}: expected an integer, got {tok!r}") from None


def _tag_tokens(tag) -> list:
    if tag is None:
        return ["-"]
    return [str(t) for t in tag]


def _parse_tag(toks):
    if toks == ["-"]:
        return None
    out = []
    for t in toks:
        try:
            out.append(int(t))
        except ValueError:
            out.append(t)
    return tuple(out)


# -- instances ---------------------------------------------------------------

def dump_instance(inst: Instance, seed=None) -> str:
    lines = [INSTANCE_MAGIC, _metric_line(inst.metric)]
    if seed is not None:
        lines.append(f"seed {seed}")
    for s in inst.sites:
        lines.append(f"site {s.id} {_fmt(s.point.x)} {_fmt(s.point.y)} "
                     f"{_fmt(s.appetite)}")
    return "\n".join(lines) + "\n"


def load_instance(text: str) -> Instance:
    lines = text.splitlines()
    if not lines or lines[0].strip() != INSTANCE_MAGIC:
        raise ParseError("missing instance header")
    metric = None
    sites = []
    seen = set()
    for ln, raw in enumerate(lines[1:], start=2):
        toks = raw.split()
        if not toks or toks[0].startswith("#"):
            continue
        kind = toks[0]
        if kind == "metric":
            metric = _parse_metric(toks[1:], ln)
        elif kind == "seed":
            _int(toks[1], ln)
        elif kind == "site":
            if len(toks) != 5:
                raise ParseError(f"line {ln}: site takes id x y appetite")
            sid = _int(toks[1], ln)
            if sid in seen:
                raise ParseError(f"line {ln}: duplicate site id {sid}")
            seen.add(sid)
            x, y, a = (_float(t, ln) for t in toks[2:5])
            if a <= 0:
                raise ParseError(f"line {ln}: appetite must be positive")
            sites.append(Site(sid, Point(x, y), a))
        else:
            raise ParseError(f"line {ln}: unknown record {kind!r}")
    if metric is None:
        raise ParseError("instance has no metric record")
    if not sites:
        raise ParseError("instance has no sites")
    return Instance(metric, tuple(sites))


# -- diagrams ----------------------------------------------------------------

def _element_line(e) -> str:
    if isinstance(e, Seg):
        head = f"seg {_fmt(e.ax)} {_fmt(e.ay)} {_fmt(e.bx)} {_fmt(e.by)}"
    elif isinstance(e, Arc):
        head = (f"arc {_fmt(e.cx)} {_fmt(e.cy)} {_fmt(e.r)} "
                f"{_fmt(e.a0)} {_fmt(e.sweep)}")
    else:
        raise ParseError(f"unserializable element {type(e).__name__}")
    return head + " tag " + " ".join(_tag_tokens(e.tag))


def _parse_element(toks, ln: int):
    if "tag" not in toks:
        raise ParseError(f"line {ln}: element missing tag marker")
    cut = toks.index("tag")
    nums = [_float(t, ln) for t in toks[1:cut]]
    tag = _parse_tag(toks[cut + 1:])
    if toks[0] == "seg":
        if len(nums) != 4:
            raise ParseError(f"line {ln}: seg takes 4 coordinates")
        return Seg(nums[0], nums[1], nums[2], nums[3], tag)
    if toks[0] == "arc":
        if len(nums) != 5:
            raise ParseError(f"line {ln}: arc takes 5 numbers")
        return Arc(nums[0], nums[1], nums[2], nums[3], nums[4], tag)
    raise ParseError(f"line {ln}: unknown element {toks[0]!r}")


def dump_diagram(diag: StableDiagram) -> str:
    lines = [DIAGRAM_MAGIC, _metric_line(diag.metric)]
    lines.append("bounds " + " ".join(_fmt(v) for v in diag.bounds))
    st = diag.stats
    lines.append(f"stats calls {st.primitive_calls} area_evals {st.area_evals} "
                 f"free_rebuilds {st.free_rebuilds} elapsed {_fmt(st.elapsed)}")
    for sid in sorted(diag.sites):
        s = diag.sites[sid]
        lines.append(f"site {s.id} {_fmt(s.point.x)} {_fmt(s.point.y)} "
                     f"{_fmt(s.appetite)}")
    lines.append("order " + " ".join(str(sid) for sid in diag.order))
    for sid in diag.order:
        lines.append(f"radius {sid} {_fmt(diag.radii[sid])}")
    for sid in sorted(diag.regions):
        reg = diag.regions[sid]
        lines.append(f"region {sid} area {_fmt(reg.area())} "
                     f"loops {len(reg.loops)}")
        for lp in reg.loops:
            lines.append(f"loop elements {len(lp.elements)}")
            for e in lp.elements:
                lines.append(_element_line(e))
    return "\n".join(lines) + "\n"


def load_diagram(text: str, tol: Tolerances = DEFAULT_TOL) -> StableDiagram:
    lines = text.splitlines()
    if not lines or lines[0].strip() != DIAGRAM_MAGIC:
        raise ParseError("missing diagram header")
    metric = None
    bounds = None
    stats = SolveStats()
    sites = {}
    order = []
    radii = {}
    regions = {}
    cur_loops = None      # loops of the region being read
    cur_elems = None      # element list of the loop being read
    cur_count = 0

    def close_loop(ln):
        nonlocal cur_elems
        if cur_elems is None:
            return
        if len(cur_elems) != cur_count:
            raise ParseError(f"line {ln}: loop declared {cur_count} elements, "
                             f"got {len(cur_elems)}")
        cur_loops.append(ArcSegBoundary(cur_elems))
        cur_elems = None

    for ln, raw in enumerate(lines[1:], start=2):
        toks = raw.split()
        if not toks or toks[0].startswith("#"):
            continue
        kind = toks[0]
        if kind in ("seg", "arc"):
            if cur_elems is None:
                raise ParseError(f"line {ln}: element outside a loop")
            cur_elems.append(_parse_element(toks, ln))
            continue
        close_loop(ln)
        if kind == "metric":
            metric = _parse_metric(toks[1:], ln)
        elif kind == "bounds":
            if len(toks) != 5:
                raise ParseError(f"line {ln}: bounds takes 4 numbers")
            bounds = tuple(_float(t, ln) for t in toks[1:])
        elif kind == "stats":
            kv = toks[1:]
            if len(kv) % 2:
                raise ParseError(f"line {ln}: stats expects key value pairs")
            for i in range(0, len(kv), 2):
                key, val = kv[i], kv[i + 1]
                if key == "elapsed":
                    stats.elapsed = _float(val, ln)
                elif key in ("calls", "primitive_calls"):
                    stats.primitive_calls = _int(val, ln)
                elif key == "area_evals":
                    stats.area_evals = _int(val, ln)
                elif key == "free_rebuilds":
                    stats.free_rebuilds = _int(val, ln)
                else:
                    raise ParseError(f"line {ln}: unknown stat {key!r}")
        elif kind == "site":
            sid = _int(toks[1], ln)
            x, y, a = (_float(t, ln) for t in toks[2:5])
            sites[sid] = Site(sid, Point(x, y), a)
        elif kind == "order":
            order = [_int(t, ln) for t in toks[1:]]
        elif kind == "radius":
            radii[_int(toks[1], ln)] = _float(toks[2], ln)
        elif kind == "region":
            if len(toks) != 6 or toks[2] != "area" or toks[4] != "loops":
                raise ParseError(f"line {ln}: malformed region header")
            sid = _int(toks[1], ln)
            cur_loops = []
            regions[sid] = cur_loops
        elif kind == "loop":
            if cur_loops is None:
                raise ParseError(f"line {ln}: loop outside a region")
            cur_count = _int(toks[2], ln)
            cur_elems = []
        else:
            raise ParseError(f"line {ln}: unknown record {kind!r}")
    close_loop(len(lines))
    if metric is None or bounds is None:
        raise ParseError("diagram missing metric or bounds")
    if not sites or not order:
        raise ParseError("diagram missing sites or order")
    if set(order) != set(sites) or set(radii) != set(sites):
        raise ParseError("order/radius records do not cover the sites")
    if set(regions) != set(sites):
        raise ParseError("region records do not cover the sites")
    regs = {sid: Region(loops) for sid, loops in regions.items()}
    return StableDiagram(metric, sites, bounds, tol, order, radii, regs,
                         pieces={sid: [] for sid in sites}, history=[],
                         stats=stats)
