"""Ordering solver: topology on known instances, invariants on random ones.

The load-bearing facts checked here: committed radii never decrease along
the commit order, every per-round estimate lower-bounds the final radius of
its site, each region captures its appetite exactly, regions stay inside
their committed balls, and the primitive-call budget is exactly
n(n+1)/2.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stablevor.config import DEFAULT_TOL
from stablevor.errors import DuplicateSites, InfeasibleState
from stablevor.geom import Point
from stablevor.instances import random_instance
from stablevor.metric import distance, euclidean, linf_metric
from stablevor.solver import (Site, area_residuals, count_complexity,
                              edge_residuals, sample_stability, solve)

from conftest import two_site_first_radius


def two_sites(b=0.3, appetite=1.0):
    return [Site(0, Point(-b, 0.0), appetite),
            Site(1, Point(b, 0.0), appetite)]


def test_single_site():
    diag = solve(euclidean(), [Site(0, Point(0.2, -0.1), 2.0)])
    assert diag.order == [0]
    assert diag.radii[0] == pytest.approx(math.sqrt(2.0 / math.pi), abs=1e-10)
    assert diag.regions[0].area() == pytest.approx(2.0, rel=1e-9)
    assert count_complexity(diag) == (1, 1, 0)
    assert diag.stats.primitive_calls == 1


def test_two_site_topology_and_radius():
    diag = solve(euclidean(), two_sites())
    # symmetric estimates tie, the lower id commits first
    assert diag.order == [0, 1]
    assert diag.radii[0] == pytest.approx(two_site_first_radius(0.3),
                                          abs=1e-9)
    assert diag.radii[1] >= diag.radii[0]
    assert count_complexity(diag) == (2, 3, 2)
    assert diag.stats.primitive_calls == 3
    for sid in (0, 1):
        assert diag.regions[sid].area() == pytest.approx(1.0, rel=1e-9)


def test_three_far_sites_disjoint_disks():
    sites = [Site(i, Point(10.0 * i, 0.0), 1.0) for i in range(3)]
    diag = solve(euclidean(), sites)
    assert count_complexity(diag) == (3, 3, 0)
    r = math.sqrt(1.0 / math.pi)
    for sid in range(3):
        assert diag.radii[sid] == pytest.approx(r, abs=1e-9)


def random_diag(n=25, seed=1, **kw):
    inst = random_instance(n, seed=seed, **kw)
    return inst, solve(inst.metric, inst.sites)


def test_area_capture():
    inst, diag = random_diag()
    worst = max(area_residuals(diag).values())
    assert worst <= 1e-9


def test_radii_nondecreasing_along_order():
    _, diag = random_diag(seed=2)
    rs = [diag.radii[sid] for sid in diag.order]
    assert all(b >= a - 1e-12 for a, b in zip(rs, rs[1:]))


def test_estimates_dominate_final_radii():
    """Estimate cells only grow as competitors leave the live diagram and
    remaining appetites only shrink, so every recorded estimate must sit at
    or above the radius its site finally commits at."""
    _, diag = random_diag(seed=3)
    eps = diag.tol.eps_radius(diag.scale)
    for entry in diag.history:
        for sid, est in entry.estimates.items():
            assert est >= diag.radii[sid] - eps


def test_chosen_site_is_argmin():
    _, diag = random_diag(seed=4)
    for entry in diag.history:
        best = min(entry.estimates.values())
        assert entry.estimates[entry.chosen] == best
        ties = sorted(s for s, e in entry.estimates.items() if e == best)
        assert entry.chosen == ties[0]


def test_covered_area_monotone_and_totals():
    inst, diag = random_diag(seed=5)
    cov = [e.covered_area for e in diag.history]
    assert all(b >= a - 1e-9 for a, b in zip(cov, cov[1:]))
    assert cov[-1] == pytest.approx(inst.total_appetite(), rel=1e-9)
    total = sum(reg.area() for reg in diag.regions.values())
    assert total == pytest.approx(inst.total_appetite(), rel=1e-9)


def test_regions_inside_committed_balls():
    inst, diag = random_diag(n=12, seed=6)
    rng = np.random.default_rng(0)
    eps = 1e-7 * diag.scale
    for sid, reg in diag.regions.items():
        xmin, ymin, xmax, ymax = reg.bbox()
        xs = rng.uniform(xmin, xmax, 4000)
        ys = rng.uniform(ymin, ymax, 4000)
        inside = reg.contains_many(xs, ys, eps=-eps)  # strict interior
        c = diag.sites[sid].point
        for x, y in zip(xs[inside], ys[inside]):
            assert distance(diag.metric, c, Point(x, y)) \
                <= diag.radii[sid] + eps


def test_primitive_call_budget():
    for n in (1, 2, 7, 25):
        inst, diag = random_diag(n=n, seed=8)
        assert diag.stats.primitive_calls == n * (n + 1) // 2
        assert diag.stats.free_rebuilds <= diag.stats.primitive_calls


def test_no_blocking_pairs():
    _, diag = random_diag(n=12, seed=9)
    checked, violations = sample_stability(diag, 20000)
    assert checked == 20000
    assert violations == 0


def test_pointwise_rule_matches_region_membership():
    _, diag = random_diag(n=10, seed=10)
    rng = np.random.default_rng(1)
    xmin, ymin, xmax, ymax = diag.domain_bbox()
    xs = rng.uniform(xmin, xmax, 20000)
    ys = rng.uniform(ymin, ymax, 20000)
    a = diag.classify_many(xs, ys)
    b = diag.region_owner_many(xs, ys)
    assert np.mean(a != b) < 1e-3  # disagreement is boundary-only


def test_edge_residuals_tiny():
    _, diag = random_diag(seed=11)
    assert edge_residuals(diag) <= 1e-9


def test_threads_match_serial():
    inst = random_instance(14, seed=12)
    a = solve(inst.metric, inst.sites, threads=1)
    b = solve(inst.metric, inst.sites, threads=4)
    assert a.order == b.order
    assert a.radii == b.radii  # bitwise, not approx
    for sid in a.radii:
        assert a.regions[sid].area() == b.regions[sid].area()


def test_polygonal_metric_end_to_end():
    inst, diag = random_diag(n=8, seed=13, metric=linf_metric())
    assert max(area_residuals(diag).values()) <= 1e-9
    rs = [diag.radii[sid] for sid in diag.order]
    assert all(b >= a - 1e-12 for a, b in zip(rs, rs[1:]))


def test_infeasible_bounds():
    with pytest.raises(InfeasibleState):
        solve(euclidean(), two_sites(appetite=10.0),
              bounds=(-1.0, -1.0, 1.0, 1.0))


def test_duplicate_ids_rejected():
    with pytest.raises(DuplicateSites):
        solve(euclidean(), [Site(0, Point(0, 0), 1.0),
                            Site(0, Point(1, 0), 1.0)])


def test_bad_inputs_rejected():
    with pytest.raises(ValueError):
        solve(euclidean(), [])
    with pytest.raises(ValueError):
        solve(euclidean(), [Site(0, Point(0, 0), -2.0)])


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_random_small_instances_keep_invariants(seed):
    inst = random_instance(5, seed=seed)
    diag = solve(inst.metric, inst.sites)
    assert max(area_residuals(diag).values()) <= 1e-9
    rs = [diag.radii[sid] for sid in diag.order]
    assert all(b >= a - 1e-12 for a, b in zip(rs, rs[1:]))
    assert diag.stats.primitive_calls == 15
