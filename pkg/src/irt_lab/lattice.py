"""Lattice point sets used as lower-bound constructions.

``Lattice.INTEGER`` is Z^2 and ``Lattice.HALF`` is Z^2 shifted by (1/2, 1/2).
Their union is closed under quarter turns about any of its own points.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .geometry import Point, PointSet, point

HALF = Fraction(1, 2)


class Lattice(enum.Enum):
    INTEGER = "integer"
    HALF = "half"

    @property
    def offset(self) -> Fraction:
        return Fraction(0) if self is Lattice.INTEGER else HALF

    def contains(self, p: Point) -> bool:
        off = self.offset
        return (p.x - off).denominator == 1 and (p.y - off).denominator == 1


class Closure(enum.Enum):
    """How a quarter turn about a center acts on either lattice."""

    CLOSED = "closed"  # each lattice is mapped onto itself
    EMPTY = "empty"  # the image misses the lattice entirely


def square_grid(k: int) -> PointSet:
    """The k x k block {0, ..., k-1}^2."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return PointSet(point(i, j) for i in range(k) for j in range(k))


def disk_lattice(n: int, kind: Lattice = Lattice.INTEGER, center: Point | None = None) -> PointSet:
    """The ``n`` lattice points nearest to ``center``.

    Points are ranked by exact squared distance, ties broken by (x, y).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    c = center if center is not None else point(0, 0)
    off = kind.offset
    radius = math.sqrt(n / math.pi) + 2
    while True:
        lo_x = math.floor(c.x - radius) - 1
        lo_y = math.floor(c.y - radius) - 1
        span = 2 * math.ceil(radius) + 3
        cand = []
        r2 = Fraction(radius * radius)
        inside = 0
        for i in range(lo_x, lo_x + span + 1):
            px = i + off
            dx2 = (px - c.x) ** 2
            for j in range(lo_y, lo_y + span + 1):
                py = j + off
                d2 = dx2 + (py - c.y) ** 2
                cand.append((d2, px, py))
                if d2 <= r2:
                    inside += 1
        # every point of the box within `radius` is present, so the n nearest
        # are exact once that disk already holds n of them
        if inside >= n:
            break
        radius *= 1.5
    cand.sort()
    return PointSet(Point(x, y) for _, x, y in cand[:n])


@dataclass(frozen=True)
class TwoDiskParams:
    """Total size ``n`` split as m1 + m2 with m2 ~ x * m1."""

    n: int
    x: Union[Fraction, float]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0 < self.x < 1:
            raise ValueError(f"ratio x must lie in (0, 1), got {self.x}")

    @property
    def m1(self) -> int:
        ratio = Fraction(self.n) / (1 + Fraction(self.x))
        return math.floor(ratio + HALF)

    @property
    def m2(self) -> int:
        return self.n - self.m1


def two_disk(params: TwoDiskParams) -> tuple[PointSet, PointSet]:
    """Integer-lattice disk A with a half-lattice disk B on the same center."""
    m1, m2 = params.m1, params.m2
    if m2 < 1:
        raise ValueError(f"n={params.n}, x={params.x} leaves the half-lattice disk empty")
    origin = point(0, 0)
    return disk_lattice(m1, Lattice.INTEGER, origin), disk_lattice(m2, Lattice.HALF, origin)


def lattice_rotation_class(j, k) -> Closure:
    """Decide whether quarter turns about (j, k) preserve both lattices."""
    j, k = Fraction(j), Fraction(k)
    if (k - j).denominator == 1 and (k + j).denominator == 1:
        return Closure.CLOSED
    return Closure.EMPTY
