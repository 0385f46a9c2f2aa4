"""IRT degrees and totals.

The fast path maps every point of ``P`` through a similarity about a center
and counts how many images land back in ``P``. Coordinates are first scaled
to a common integer frame so that membership is a lookup on machine integers;
when the frame is small enough the lookups are vectorized with numpy.

``count_irt_oracle`` is the independent cubic check; it shares nothing with
the fast path except :func:`irt_lab.geometry.classify_irt`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Literal, Sequence

import numpy as np

from .geometry import Point, PointSet, classify_irt

MapKind = Literal["90", "plus", "minus"]

ORACLE_CAP = 60

# int64 headroom: images reach about 4x the largest scaled coordinate
_MAX_ABS_COORD = 1 << 58
_DENSE_CELLS = 1 << 25
_BATCH_ELEMS = 1 << 21


def common_scale(points: Sequence[Point]) -> int:
    """Least common multiple of all coordinate denominators."""
    scale = 1
    for p in points:
        scale = math.lcm(scale, p.x.denominator, p.y.denominator)
    return scale


def _scaled(p: Point, scale: int) -> tuple[int, int] | None:
    if scale % p.x.denominator or scale % p.y.denominator:
        return None
    return (p.x.numerator * (scale // p.x.denominator),
            p.y.numerator * (scale // p.y.denominator))


class _Frame:
    """Integer image of a point set at a fixed scale, with membership lookup."""

    def __init__(self, points: Sequence[Point], scale: int):
        self.scale = scale
        coords = [_scaled(p, scale) for p in points]
        self.xs = [c[0] for c in coords]
        self.ys = [c[1] for c in coords]
        self.keys = set(coords)
        self.n = len(coords)
        self._mode = "python"
        if self.n and max(max(map(abs, self.xs)), max(map(abs, self.ys))) < _MAX_ABS_COORD:
            self._setup_numpy()

    def _setup_numpy(self) -> None:
        X = np.array(self.xs, dtype=np.int64)
        Y = np.array(self.ys, dtype=np.int64)
        self.X, self.Y = X, Y
        self.xmin, self.ymin = int(X.min()), int(Y.min())
        self.W = int(X.max()) - self.xmin + 1
        self.H = int(Y.max()) - self.ymin + 1
        cells = self.W * self.H
        if cells <= _DENSE_CELLS:
            occ = np.zeros((self.W, self.H), dtype=bool)
            occ[X - self.xmin, Y - self.ymin] = True
            self.occ = occ
            self._mode = "dense"
        elif cells < (1 << 62):
            self.sorted_keys = np.sort((X - self.xmin) * self.H + (Y - self.ymin))
            self._mode = "sorted"

    def center(self, p: Point) -> tuple[int, int] | None:
        return _scaled(p, self.scale)

    def hits(self, cx: int, cy: int, kind: MapKind) -> int:
        """|P ∩ map(c, P)| for one center given in frame coordinates."""
        if self._mode == "python" or abs(cx) >= _MAX_ABS_COORD or abs(cy) >= _MAX_ABS_COORD:
            return self._hits_python(cx, cy, kind)
        return int(self.hits_many(np.array([cx]), np.array([cy]), kind)[0])

    def _hits_python(self, cx: int, cy: int, kind: MapKind) -> int:
        keys = self.keys
        count = 0
        for x, y in zip(self.xs, self.ys):
            dx, dy = x - cx, y - cy
            if kind == "90":
                img = (cx - dy, cy + dx)
            elif kind == "plus":
                img = (cx + dx - dy, cy + dx + dy)
            else:
                u, v = dx - dy, dx + dy
                if u & 1:
                    continue
                img = (cx + u // 2, cy + v // 2)
            if img in keys:
                count += 1
        return count

    def hits_many(self, CX: np.ndarray, CY: np.ndarray, kind: MapKind) -> np.ndarray:
        """Vectorized :meth:`hits` over an array of centers."""
        if self._mode == "python":
            return np.array([self._hits_python(int(a), int(b), kind) for a, b in zip(CX, CY)],
                            dtype=np.int64)
        out = np.empty(len(CX), dtype=np.int64)
        batch = max(1, _BATCH_ELEMS // max(self.n, 1))
        for lo in range(0, len(CX), batch):
            cx = np.asarray(CX[lo:lo + batch], dtype=np.int64)[:, None]
            cy = np.asarray(CY[lo:lo + batch], dtype=np.int64)[:, None]
            dx = self.X[None, :] - cx
            dy = self.Y[None, :] - cy
            if kind == "90":
                rx, ry = cx - dy, cy + dx
                ok = None
            elif kind == "plus":
                rx, ry = cx + dx - dy, cy + dx + dy
                ok = None
            else:
                u, v = dx - dy, dx + dy
                ok = (u & 1) == 0
                rx, ry = cx + (u >> 1), cy + (v >> 1)
            out[lo:lo + batch] = self._member_counts(rx, ry, ok)
        return out

    def _member_counts(self, rx: np.ndarray, ry: np.ndarray, ok: np.ndarray | None) -> np.ndarray:
        ix = rx - self.xmin
        iy = ry - self.ymin
        inside = (ix >= 0) & (ix < self.W) & (iy >= 0) & (iy < self.H)
        if ok is not None:
            inside &= ok
        hit = np.zeros(rx.shape, dtype=bool)
        if self._mode == "dense":
            hit[inside] = self.occ[ix[inside], iy[inside]]
        else:
            keys = ix[inside] * self.H + iy[inside]
            pos = np.searchsorted(self.sorted_keys, keys)
            pos[pos == len(self.sorted_keys)] = 0
            hit[inside] = self.sorted_keys[pos] == keys
        return hit.sum(axis=1)


def _frame(P: PointSet, scale: int | None = None) -> _Frame:
    base = common_scale(P.points)
    scale = base if scale is None else math.lcm(base, scale)
    cache = P._frame
    if cache is None:
        cache = P._frame = {}
    fr = cache.get(scale)
    if fr is None:
        fr = cache[scale] = _Frame(P.points, scale)
    return fr


def _frame_with(P: PointSet, z: Point) -> tuple[_Frame, tuple[int, int]]:
    fr = _frame(P, math.lcm(z.x.denominator, z.y.denominator))
    return fr, fr.center(z)


def deg90(P: PointSet, z: Point) -> int:
    """Number of IRTs of ``P`` with right angle at ``z`` (``z`` must be in P)."""
    if z not in P:
        raise ValueError(f"{z} is not in the point set")
    fr, c = _frame_with(P, z)
    return fr.hits(*c, "90") - 1


def deg90_candidate(P: PointSet, z: Point) -> int:
    """Number of IRTs with right angle at an outside point ``z`` and legs in P."""
    if z in P:
        raise ValueError(f"{z} is already in the point set")
    if not len(P):
        return 0
    fr, c = _frame_with(P, z)
    return fr.hits(*c, "90")


def deg45(P: PointSet, z: Point, orientation: Literal["plus", "minus"]) -> int:
    """Counterclockwise IRTs ``z x y`` whose hypotenuse is ``zy`` (plus) or ``zx`` (minus)."""
    if orientation not in ("plus", "minus"):
        raise ValueError(f"orientation must be 'plus' or 'minus', got {orientation!r}")
    if z not in P:
        raise ValueError(f"{z} is not in the point set")
    fr, c = _frame_with(P, z)
    return fr.hits(*c, orientation) - 1


def extension_gain(P: PointSet, z: Point) -> int:
    """IRTs that adding ``z`` to P would create.

    For an outside point every new IRT has ``z`` as its right-angle vertex or
    as exactly one 45-degree vertex of one orientation, so the three image
    counts add up without overlap.
    """
    if z in P:
        raise ValueError(f"{z} is already in the point set")
    if len(P) < 2:
        return 0
    fr, c = _frame_with(P, z)
    return sum(fr.hits(*c, kind) for kind in ("90", "plus", "minus"))


def _all_hits(P: PointSet, kind: MapKind) -> np.ndarray:
    fr = _frame(P)
    if fr._mode == "python":
        return np.array([fr._hits_python(x, y, kind) for x, y in zip(fr.xs, fr.ys)],
                        dtype=np.int64)
    return fr.hits_many(fr.X, fr.Y, kind)


def count_irt(P: PointSet) -> int:
    """Total number of IRTs in P, as the sum of right-angle degrees."""
    if len(P) < 3:
        return 0
    return int(_all_hits(P, "90").sum()) - len(P)


def count_irt_oracle(P: PointSet, cap: int = ORACLE_CAP) -> int:
    """Brute-force count over all triples; refuses sets larger than ``cap``.

    The set is first scaled by the lcm of its denominators, which keeps every
    triple's classification and lets the cubic loop run on plain integers.
    """
    if len(P) > cap:
        raise ValueError(f"oracle limited to {cap} points, got {len(P)}")
    den = 1
    for p in P:
        den = den * p.x.denominator // math.gcd(den, p.x.denominator)
        den = den * p.y.denominator // math.gcd(den, p.y.denominator)
    ints = [(int(p.x * den), int(p.y * den)) for p in P]
    return sum(1 for t in combinations(ints, 3) if classify_irt(*t) is not None)


@dataclass(frozen=True)
class DegreeProfile:
    points: tuple[Point, ...]
    deg90: tuple[int, ...]
    deg45_plus: tuple[int, ...]
    deg45_minus: tuple[int, ...]

    def __getitem__(self, p: Point) -> tuple[int, int, int]:
        i = self.points.index(p)
        return self.deg90[i], self.deg45_plus[i], self.deg45_minus[i]

    def totals(self) -> tuple[int, int, int]:
        return sum(self.deg90), sum(self.deg45_plus), sum(self.deg45_minus)

    def rows(self):
        return zip(self.points, self.deg90, self.deg45_plus, self.deg45_minus)


def degree_profile(P: PointSet) -> DegreeProfile:
    if not len(P):
        return DegreeProfile((), (), (), ())
    cols = [tuple(int(v) - 1 for v in _all_hits(P, kind)) for kind in ("90", "plus", "minus")]
    return DegreeProfile(P.points, *cols)


def extension_gains(P: PointSet, candidates: Sequence[Point]) -> list[int]:
    """:func:`extension_gain` for many outside points at once."""
    if len(P) < 2 or not candidates:
        return [0] * len(candidates)
    fr = _frame(P, common_scale(candidates))
    centers = [fr.center(z) for z in candidates]
    if fr._mode == "python":
        return [sum(fr._hits_python(cx, cy, k) for k in ("90", "plus", "minus"))
                for cx, cy in centers]
    CX = np.array([c[0] for c in centers], dtype=np.int64)
    CY = np.array([c[1] for c in centers], dtype=np.int64)
    total = sum(fr.hits_many(CX, CY, k) for k in ("90", "plus", "minus"))
    return [int(v) for v in total]
