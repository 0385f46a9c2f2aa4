"""Exact planar points, the three similarity maps used for IRT counting, and
the IRT predicate.

Coordinates are :class:`fractions.Fraction` values, which are always kept in
lowest terms with a positive denominator, so equal values hash equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Optional, Union

RationalLike = Union[int, str, Fraction]


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"

    def as_floats(self) -> tuple[float, float]:
        return float(self.x), float(self.y)


def point(x: RationalLike, y: RationalLike) -> Point:
    """Build a Point, coercing both coordinates to Fraction."""
    return Point(Fraction(x), Fraction(y))


def rot90(center: Point, p: Point) -> Point:
    """Quarter turn of ``p`` about ``center`` (counterclockwise)."""
    cx, cy = center
    return Point(cx - (p.y - cy), cy + (p.x - cx))


def rot45_plus(center: Point, p: Point) -> Point:
    """Multiply the offset ``p - center`` by ``1 + i``.

    This is the sqrt(2) dilation followed by a pi/4 turn; it sends the apex of
    a counterclockwise IRT to its far 45-degree vertex.
    """
    cx, cy = center
    dx, dy = p.x - cx, p.y - cy
    return Point(cx + dx - dy, cy + dx + dy)


def rot45_minus(center: Point, p: Point) -> Point:
    """Multiply the offset ``p - center`` by ``(1 + i) / 2``."""
    cx, cy = center
    dx, dy = p.x - cx, p.y - cy
    return Point(cx + (dx - dy) / 2, cy + (dx + dy) / 2)


def classify_irt(p, q, r) -> Optional[Point]:
    """Return the right-angle vertex if ``p, q, r`` form an IRT, else None.

    Works on Points or on plain (x, y) pairs of exact numbers. With equal legs
    of squared length s, the angle between them is right exactly when the
    third side has squared length 2s. Duplicate or collinear triples are
    simply not IRTs.
    """
    (px, py), (qx, qy), (rx, ry) = p, q, r
    a = (qx - rx) ** 2 + (qy - ry) ** 2
    b = (px - rx) ** 2 + (py - ry) ** 2
    c = (px - qx) ** 2 + (py - qy) ** 2
    if b == c and a == 2 * b and b:
        return p
    if a == c and b == 2 * a and a:
        return q
    if a == b and c == 2 * a and a:
        return r
    return None


class PointSet:
    """Immutable finite set of distinct points.

    Iteration follows insertion order; membership is a hash lookup. Duplicate
    inputs are silently merged, use :meth:`strict` to reject them instead.
    """

    __slots__ = ("_points", "_index", "_frame")

    def __init__(self, points: Iterable[Point] = ()):
        seen: dict[Point, None] = {}
        for p in points:
            if not isinstance(p, Point):
                p = point(*p)
            seen.setdefault(p, None)
        self._points: tuple[Point, ...] = tuple(seen)
        self._index = frozenset(self._points)
        self._frame = None

    @classmethod
    def strict(cls, points: Iterable[Point]) -> "PointSet":
        pts = list(points)
        out = cls(pts)
        if len(out) != len(pts):
            raise ValueError("duplicate points")
        return out

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self._points)

    def __contains__(self, p: object) -> bool:
        return p in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self._index == other._index

    def __hash__(self) -> int:
        return hash(self._index)

    def __repr__(self) -> str:
        inner = ", ".join(str(p) for p in self._points[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"PointSet([{inner}{more}], n={len(self)})"

    @property
    def points(self) -> tuple[Point, ...]:
        return self._points

    def sorted(self) -> list[Point]:
        return sorted(self._points)

    def with_point(self, p: Point) -> "PointSet":
        return PointSet(self._points + (p,))

    def union(self, other: Iterable[Point]) -> "PointSet":
        return PointSet(self._points + tuple(other))

    def translated(self, dx: RationalLike, dy: RationalLike) -> "PointSet":
        dx, dy = Fraction(dx), Fraction(dy)
        return PointSet(Point(p.x + dx, p.y + dy) for p in self._points)

    def scaled(self, factor: RationalLike) -> "PointSet":
        f = Fraction(factor)
        if f == 0:
            raise ValueError("scale factor must be nonzero")
        return PointSet(Point(p.x * f, p.y * f) for p in self._points)

    def rotated90(self, center: Point) -> "PointSet":
        return PointSet(rot90(center, p) for p in self._points)
