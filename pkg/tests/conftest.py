"""Shared fixtures and independent oracles.

Oracles here are deliberately primitive (bisection, Monte Carlo): they must
not share code paths with the implementation they check.
"""

import math

import numpy as np
import pytest


def two_site_first_radius(b: float, appetite: float = 1.0) -> float:
    """Root of r^2*(pi - acos(b/r)) + b*sqrt(r^2 - b^2) = appetite.

    Area of a disk of radius r centered at distance b from a halfplane
    boundary, keeping the far side.  Monotone in r, so plain bisection."""

    def f(r):
        return r * r * (math.pi - math.acos(b / r)) + b * math.sqrt(
            r * r - b * b) - appetite

    lo = b
    hi = max(2.0 * b, 2.0 * math.sqrt(appetite / math.pi))
    while f(hi) < 0.0:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def mc_area(contains, bbox, n=200000, rng=None):
    """Monte Carlo area of a containment predicate; returns (mean, sigma)."""
    if rng is None:
        rng = np.random.default_rng(0)
    xmin, ymin, xmax, ymax = bbox
    xs = rng.uniform(xmin, xmax, n)
    ys = rng.uniform(ymin, ymax, n)
    inside = contains(xs, ys)
    box = (xmax - xmin) * (ymax - ymin)
    p = inside.mean()
    return box * p, box * math.sqrt(max(p * (1 - p), 1e-12) / n)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
