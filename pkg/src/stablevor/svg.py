"""Static SVG rendering of diagrams.

One path per face, arcs emitted as native elliptical-arc commands (never
flattened to polylines), colors keyed deterministically off site ids so
repeated renders are byte-identical.
"""

from __future__ import annotations

import math

from .geom import Arc, Seg
from .metric import EUCLIDEAN, Ball
from .voronoi import VoronoiDiagram

TAU = 2.0 * math.pi
GOLDEN = 0.618033988749895


def _hsl(sid: int, palette: str) -> tuple:
    h = (sid * GOLDEN) % 1.0
    if palette == "gray":
        g = 35 + int(55 * h)
        return (f"hsl(0,0%,{g}%)", "hsl(0,0%,25%)")
    return (f"hsl({h * 360:.1f},62%,58%)", f"hsl({h * 360:.1f},65%,32%)")


class _Frame:
    """World-to-viewport mapping with the y axis flipped."""

    def __init__(self, bbox, size):
        xmin, ymin, xmax, ymax = bbox
        pad = 0.04 * max(xmax - xmin, ymax - ymin)
        self.xmin = xmin - pad
        self.ymax = ymax + pad
        self.s = size / (xmax - xmin + 2 * pad)
        self.w = size
        self.h = self.s * (ymax - ymin + 2 * pad)

    def pt(self, x, y):
        return ((x - self.xmin) * self.s, (self.ymax - y) * self.s)

    def fmt(self, x, y):
        px, py = self.pt(x, y)
        return f"{px:.3f} {py:.3f}"


def _arc_cmds(fr: _Frame, e: Arc) -> str:
    """A-commands for one arc.  Flipping y reverses orientation, so a
    positive (counterclockwise) world sweep becomes sweep-flag 0.  Full
    circles split in two; a single A with coincident endpoints collapses."""
    rr = e.r * fr.s
    flag = 0 if e.sweep > 0 else 1
    out = []
    sweep = e.sweep
    if abs(sweep) > TAU - 1e-12:
        half = 0.5 * math.copysign(TAU, sweep)
        mid = e.a0 + half
        mx = e.cx + e.r * math.cos(mid)
        my = e.cy + e.r * math.sin(mid)
        out.append(f"A {rr:.3f} {rr:.3f} 0 0 {flag} {fr.fmt(mx, my)}")
        sweep -= half
        a0 = mid
    else:
        a0 = e.a0
    large = 1 if abs(sweep) > math.pi else 0
    a1 = a0 + sweep
    ex = e.cx + e.r * math.cos(a1)
    ey = e.cy + e.r * math.sin(a1)
    out.append(f"A {rr:.3f} {rr:.3f} 0 {large} {flag} {fr.fmt(ex, ey)}")
    return " ".join(out)


def _loop_path(fr: _Frame, loop) -> str:
    els = loop.elements
    x0, y0 = els[0].point_at(0.0)
    parts = [f"M {fr.fmt(x0, y0)}"]
    for e in els:
        if isinstance(e, Seg):
            parts.append(f"L {fr.fmt(e.bx, e.by)}")
        else:
            parts.append(_arc_cmds(fr, e))
    parts.append("Z")
    return " ".join(parts)


def _face_paths(fr: _Frame, region) -> list:
    return [" ".join(_loop_path(fr, lp) for lp in (outer, *holes))
            for outer, holes in region.faces()]


def _ball_outline(fr: _Frame, metric, center, r) -> str:
    if metric.kind == EUCLIDEAN:
        cx, cy = fr.pt(center.x, center.y)
        return (f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="{r * fr.s:.3f}"/>')
    pts = " ".join(fr.fmt(center.x + r * v.x, center.y + r * v.y).replace(" ", ",")
                   for v in metric.unit_ball.vertices)
    return f'<polygon points="{pts}"/>'


def render(diag, size: int = 800, palette: str = "golden",
           show_disks: bool = False, show_voronoi: bool = False) -> str:
    """Render a diagram to an SVG string."""
    fr = _Frame(diag.domain_bbox(), size)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{fr.w:.0f}" '
           f'height="{fr.h:.0f}" viewBox="0 0 {fr.w:.3f} {fr.h:.3f}">',
           f'<rect width="{fr.w:.3f}" height="{fr.h:.3f}" fill="white"/>']
    for sid in sorted(diag.regions):
        fill, stroke = _hsl(sid, palette)
        for d in _face_paths(fr, diag.regions[sid]):
            out.append(f'<path d="{d}" fill="{fill}" fill-opacity="0.55" '
                       f'stroke="{stroke}" stroke-width="1.2" '
                       f'fill-rule="evenodd"/>')
    if show_voronoi:
        vd = VoronoiDiagram(diag.metric,
                            {i: s.point for i, s in diag.sites.items()},
                            diag.bounds, diag.tol)
        out.append('<g fill="none" stroke="black" stroke-width="2.5" '
                   'stroke-opacity="0.5">')
        for sid in sorted(diag.sites):
            for lp in vd.cell(sid).loops:
                out.append(f'<path d="{_loop_path(fr, lp)}"/>')
        out.append("</g>")
    if show_disks:
        out.append('<g fill="none" stroke="black" stroke-width="1" '
                   'stroke-dasharray="6 4" stroke-opacity="0.7">')
        for sid in sorted(diag.sites):
            out.append(_ball_outline(fr, diag.metric, diag.sites[sid].point,
                                     diag.radii[sid]))
        out.append("</g>")
    for sid in sorted(diag.sites):
        p = diag.sites[sid].point
        cx, cy = fr.pt(p.x, p.y)
        out.append(f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="3" fill="black"/>')
        out.append(f'<text x="{cx + 5:.3f}" y="{cy - 5:.3f}" '
                   f'font-size="12" font-family="sans-serif">{sid}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
