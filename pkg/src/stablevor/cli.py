"""Command-line surface: gen / compute / verify / render / bench.

Exit codes: 0 success, 2 input parse failure, 3 solver failure (render uses
3 for an unparseable diagram as well), 4 verification failure.  Failures
also emit a one-line JSON record on stderr for machine consumption.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace

import numpy as np

from . import io as svio
from .config import DEFAULT_TOL
from .errors import ParseError, StablevorError
from .gridsim import (agreement, diagram_owner_grid, domain_cover_config,
                      simulate, write_pgm)
from .instances import lower_bound_family, random_instance, two_site_fixture
from .metric import euclidean, l1_metric, linf_metric, polygonal
from .solver import (area_residuals, count_complexity, edge_residuals,
                     sample_stability, solve)
from .svg import render


def _fail(code: int, err: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": err, "message": message}) + "\n")
    return code


def _metric_from_flag(spec: str):
    if spec == "euclidean":
        return euclidean()
    if spec == "linf":
        return linf_metric()
    if spec == "l1":
        return l1_metric()
    pts = []
    for tok in spec.split(";"):
        xy = tok.split(",")
        if len(xy) != 2:
            raise ParseError(f"bad metric vertex {tok!r}")
        pts.append((float(xy[0]), float(xy[1])))
    return polygonal(pts)


def _tol_from_args(args) -> "DEFAULT_TOL.__class__":
    tol = DEFAULT_TOL
    if getattr(args, "eps_area", None) is not None:
        tol = replace(tol, eps_area_rel=args.eps_area)
    if getattr(args, "eps_radius", None) is not None:
        tol = replace(tol, eps_radius_rel=args.eps_radius)
    if getattr(args, "bbox_scale", None) is not None:
        tol = replace(tol, bbox_safety=args.bbox_scale)
    return tol


def cmd_gen(args) -> int:
    try:
        if args.kind == "random":
            app = args.appetite or [0.3, 1.5]
            inst = random_instance(args.n,
                                   appetite=(app if len(app) > 1 else app[0]),
                                   seed=args.seed, spread=args.spread,
                                   metric=_metric_from_flag(args.metric))
        elif args.kind == "family":
            inst = lower_bound_family(args.m)
        else:
            inst = two_site_fixture(args.b,
                                    (args.appetite or [1.0])[0])
    except (StablevorError, ValueError) as e:
        return _fail(2, type(e).__name__, str(e))
    text = svio.dump_instance(inst, seed=args.seed)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_compute(args) -> int:
    try:
        with open(args.instance) as fh:
            inst = svio.load_instance(fh.read())
    except (OSError, ParseError) as e:
        return _fail(2, type(e).__name__, str(e))
    try:
        diag = solve(inst.metric, inst.sites, tol=_tol_from_args(args),
                     threads=args.threads)
    except StablevorError as e:
        return _fail(3, type(e).__name__, str(e))
    text = svio.dump_diagram(diag)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    st = diag.stats
    sys.stderr.write(f"solved n={len(diag.order)} calls={st.primitive_calls} "
                     f"elapsed={st.elapsed:.3f}s\n")
    return 0


def cmd_verify(args) -> int:
    try:
        with open(args.instance) as fh:
            inst = svio.load_instance(fh.read())
        with open(args.diagram) as fh:
            diag = svio.load_diagram(fh.read())
    except (OSError, ParseError) as e:
        return _fail(2, type(e).__name__, str(e))
    by_id = {s.id: s for s in inst.sites}
    if set(by_id) != set(diag.sites) or any(
            by_id[i].point != diag.sites[i].point
            or by_id[i].appetite != diag.sites[i].appetite for i in by_id):
        return _fail(2, "ParseError", "instance and diagram disagree on sites")

    failed = []
    res = area_residuals(diag)
    worst_area = max(res.values())
    ok = worst_area <= args.eps_area_audit
    print(f"area audit: {'PASS' if ok else 'FAIL'} "
          f"(max rel residual {worst_area:.3e}, bound {args.eps_area_audit:g})")
    if not ok:
        failed.append("area")

    worst_edge = edge_residuals(diag)
    ok = worst_edge <= args.eps_edge
    print(f"edge taxonomy: {'PASS' if ok else 'FAIL'} "
          f"(max carrier residual {worst_edge:.3e}, bound {args.eps_edge:g})")
    if not ok:
        failed.append("edges")

    total, bad = sample_stability(diag, n_samples=args.samples,
                                  rng=np.random.default_rng(args.seed))
    frac = bad / total if total else 0.0
    ok = frac <= 1e-4
    print(f"stability: {'PASS' if ok else 'FAIL'} "
          f"({bad}/{total} sampled blocking pairs)")
    if not ok:
        failed.append("stability")

    if args.grid_res:
        cfg = domain_cover_config(diag, resolution=args.grid_res)
        g = simulate(diag.metric, inst.sites, cfg)
        a = agreement(g.owner, diagram_owner_grid(diag, g))
        ok = a >= args.grid_min
        print(f"grid agreement: {'PASS' if ok else 'FAIL'} "
              f"({a:.4f} at resolution {args.grid_res}, floor {args.grid_min:g})")
        if not ok:
            failed.append("grid")
        if args.grid_out:
            write_pgm(g, args.grid_out)

    faces, edges, verts = count_complexity(diag)
    print(f"complexity: {faces} faces, {edges} edges, {verts} vertices")
    if failed:
        return _fail(4, "VerificationFailure",
                     "failed invariants: " + ", ".join(failed))
    return 0


def cmd_render(args) -> int:
    try:
        with open(args.diagram) as fh:
            diag = svio.load_diagram(fh.read())
    except (OSError, ParseError) as e:
        return _fail(3, type(e).__name__, str(e))
    text = render(diag, palette=args.palette, show_disks=args.show_disks,
                  show_voronoi=args.show_voronoi)
    with open(args.out, "w") as fh:
        fh.write(text)
    return 0


def cmd_bench(args) -> int:
    sizes = [int(t) for t in args.sizes.split(",")]
    for n in sizes:
        inst = random_instance(n, seed=args.seed)
        t0 = time.perf_counter()
        diag = solve(inst.metric, inst.sites, threads=args.threads)
        dt = time.perf_counter() - t0
        calls = diag.stats.primitive_calls
        limit = n * (n + 1) // 2 + n
        print(f"n={n:4d} calls={calls:6d} limit={limit:6d} "
              f"time={dt:8.3f}s evals={diag.stats.area_evals}")
        if calls > limit:
            return _fail(4, "VerificationFailure",
                         f"n={n}: {calls} primitive calls exceeds {limit}")
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="stablevor")
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate an instance file")
    g.add_argument("kind", choices=["random", "family", "two-site"])
    g.add_argument("--n", type=int, default=10)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--spread", type=float, default=None)
    g.add_argument("--appetite", type=float, nargs="+", default=None)
    g.add_argument("--metric", default="euclidean")
    g.add_argument("--m", type=int, default=8)
    g.add_argument("--b", type=float, default=0.3)
    g.add_argument("--out", default=None)
    g.set_defaults(fn=cmd_gen)

    c = sub.add_parser("compute", help="solve an instance")
    c.add_argument("instance")
    c.add_argument("--out", default=None)
    c.add_argument("--eps-area", type=float, default=None)
    c.add_argument("--eps-radius", type=float, default=None)
    c.add_argument("--bbox-scale", type=float, default=None)
    c.add_argument("--threads", type=int, default=1)
    c.set_defaults(fn=cmd_compute)

    v = sub.add_parser("verify", help="audit a computed diagram")
    v.add_argument("instance")
    v.add_argument("diagram")
    v.add_argument("--samples", type=int, default=100000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--grid-res", type=int, default=0)
    v.add_argument("--grid-min", type=float, default=0.99)
    v.add_argument("--grid-out", default=None)
    v.add_argument("--eps-area-audit", type=float, default=1e-6)
    v.add_argument("--eps-edge", type=float, default=1e-9)
    v.set_defaults(fn=cmd_verify)

    r = sub.add_parser("render", help="draw a diagram as SVG")
    r.add_argument("diagram")
    r.add_argument("out")
    r.add_argument("--palette", default="golden", choices=["golden", "gray"])
    r.add_argument("--show-disks", action="store_true")
    r.add_argument("--show-voronoi", action="store_true")
    r.set_defaults(fn=cmd_render)

    b = sub.add_parser("bench", help="time solves over a size sweep")
    b.add_argument("--sizes", default="10,20,40,80")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--threads", type=int, default=1)
    b.set_defaults(fn=cmd_bench)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
