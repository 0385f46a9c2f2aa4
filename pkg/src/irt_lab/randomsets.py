"""Seeded random point sets that actually contain IRTs.

Uniformly random rationals almost never form IRTs, so most generated sets
are taken from lattice windows and then moved by a random exact similarity.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .geometry import Point, PointSet, point, rot90


def _similarity(rng: random.Random, P: PointSet) -> PointSet:
    turns = rng.randrange(4)
    for _ in range(turns):
        P = P.rotated90(point(0, 0))
    scale = Fraction(rng.randint(1, 5), rng.randint(1, 4))
    shift = (Fraction(rng.randint(-20, 20), rng.randint(1, 6)), Fraction(rng.randint(-20, 20), rng.randint(1, 6)))
    return P.scaled(scale).translated(*shift)


def lattice_window_set(rng: random.Random, n: int, width: int | None = None) -> PointSet:
    """n random points of the doubled integer/half-integer lattice window."""
    width = width or max(3, int((2 * n) ** 0.5) + rng.randint(0, 3))
    cells = [(i, j) for i in range(width) for j in range(width) if rng.random() < 0.8 or (i + j) % 2 == 0]
    while len(cells) < n:
        width += 1
        cells = [(i, j) for i in range(width) for j in range(width)]
    picked = rng.sample(cells, n)
    return PointSet(point(i, j) for i, j in picked)


def rational_set(rng: random.Random, n: int, span: int = 6, max_den: int = 3) -> PointSet:
    pts: dict[Point, None] = {}
    while len(pts) < n:
        d = rng.randint(1, max_den)
        pts[point(Fraction(rng.randint(-span * d, span * d), d),
                  Fraction(rng.randint(-span * d, span * d), d))] = None
    return PointSet(pts)


def closure_set(rng: random.Random, n: int) -> PointSet:
    """Grow a set by repeatedly adding quarter-turn images of its own points."""
    pts = [point(0, 0), point(rng.randint(1, 3), rng.randint(0, 2))]
    seen = set(pts)
    guard = 0
    while len(pts) < n and guard < 50 * n:
        guard += 1
        c, p = rng.choice(pts), rng.choice(pts)
        q = rot90(c, p) if rng.random() < 0.8 else point(rng.randint(-4, 4), rng.randint(-4, 4))
        if q not in seen:
            seen.add(q)
            pts.append(q)
    while len(pts) < n:
        q = point(rng.randint(-50, 50), rng.randint(-50, 50))
        if q not in seen:
            seen.add(q)
            pts.append(q)
    return PointSet(pts)


def random_point_set(rng: random.Random, n: int) -> PointSet:
    kind = rng.random()
    if kind < 0.5:
        P = lattice_window_set(rng, n)
    elif kind < 0.8:
        P = closure_set(rng, n)
    else:
        P = rational_set(rng, n)
    return _similarity(rng, P)
