"""Search for point sets with many IRTs.

Two strategies:

* greedy growth by best one-point extension, where the only points worth
  adding are the apex completions of pairs already present;
* exact depth-first enumeration of n-subsets of a w x w integer window with
  incremental counts and a simple branch-and-bound cutoff.

The integer window stands in for the union of the integer and half-integer
lattices after doubling every coordinate, which changes no IRT count.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .bounds import diameter_upper
from .counting import count_irt, degree_profile, extension_gains
from .geometry import Point, PointSet, point
from .lattice import HALF, Lattice, disk_lattice, square_grid

# greedy lower bounds reported for 10 <= n <= 25 in the literature
PUBLISHED_LOWER_BOUNDS = {
    10: 35, 11: 43, 12: 52, 13: 64, 14: 74, 15: 85, 16: 97, 17: 112,
    18: 124, 19: 139, 20: 156, 21: 176, 22: 192, 23: 210, 24: 229, 25: 252,
}

# exact maxima for 3 <= n <= 9
KNOWN_MAXIMA = {3: 1, 4: 4, 5: 8, 6: 11, 7: 15, 8: 20, 9: 28}

DEFAULT_BUDGET = 200_000_000


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CandidateScore:
    candidate: Point
    new_irts: int
    total_after: int


@dataclass
class SearchRecord:
    n: int
    best_count: int
    witness: PointSet
    method: str
    window: str
    runtime: float = 0.0
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "best_count": self.best_count,
            "witness": [[_frac_str(p.x), _frac_str(p.y)] for p in self.witness.sorted()],
            "method": self.method,
            "window": self.window,
            "runtime": round(self.runtime, 6),
            **self.extra,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SearchRecord":
        known = {"n", "best_count", "witness", "method", "window", "runtime"}
        return cls(
            n=obj["n"],
            best_count=obj["best_count"],
            witness=PointSet(point(x, y) for x, y in obj["witness"]),
            method=obj["method"],
            window=obj["window"],
            runtime=obj.get("runtime", 0.0),
            extra={k: v for k, v in obj.items() if k not in known},
        )


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def candidate_points(P: PointSet) -> PointSet:
    """Every outside point that would complete an IRT with some pair of P."""
    if len(P) < 2:
        raise ValueError("need at least two points")
    out: dict[Point, None] = {}
    for p, q in combinations(P.points, 2):
        dx, dy = q.x - p.x, q.y - p.y
        mx, my = (p.x + q.x) / 2, (p.y + q.y) / 2
        for c in (
            Point(p.x - dy, p.y + dx), Point(p.x + dy, p.y - dx),
            Point(q.x + dy, q.y - dx), Point(q.x - dy, q.y + dx),
            Point(mx - dy / 2, my + dx / 2), Point(mx + dy / 2, my - dx / 2),
        ):
            if c not in P:
                out.setdefault(c, None)
    return PointSet(out)


def best_extension(P: PointSet) -> list[CandidateScore]:
    """All candidate points scored by the IRTs they add, best first.

    Ties go to the lexicographically smaller point.
    """
    cands = sorted(candidate_points(P))
    base = count_irt(P)
    gains = extension_gains(P, cands)
    scores = [CandidateScore(c, g, base + g) for c, g in zip(cands, gains)]
    scores.sort(key=lambda s: (-s.new_irts, s.candidate))
    return scores


def greedy_build(seed: PointSet, n_target: int, label: str = "seed") -> list[SearchRecord]:
    """Grow ``seed`` one best extension at a time up to ``n_target`` points."""
    if len(seed) < 2:
        raise ValueError("seed needs at least two points")
    if n_target < len(seed):
        raise ValueError("n_target smaller than the seed")
    t0 = time.perf_counter()
    current = seed
    count = count_irt(current)
    records = [SearchRecord(len(current), count, current, "greedy", label, 0.0)]
    while len(current) < n_target:
        top = best_extension(current)[0]
        current = current.with_point(top.candidate)
        count = top.total_after
        records.append(SearchRecord(len(current), count, current, "greedy", label,
                                    time.perf_counter() - t0))
    return records


# --- exact window search ---------------------------------------------------

def _window_triples(w: int) -> list[list[int]]:
    """For each cell index v, bitmasks of the pairs {a, b} (a, b < v) making an IRT with v."""
    cells = [(i, j) for i in range(w) for j in range(w)]
    earlier: list[list[int]] = [[] for _ in cells]
    for a, b, c in combinations(range(len(cells)), 3):
        (ax, ay), (bx, by), (cx, cy) = cells[a], cells[b], cells[c]
        if _int_irt(ax, ay, bx, by, cx, cy):
            earlier[c].append((1 << a) | (1 << b))
    return earlier


def _int_irt(ax, ay, bx, by, cx, cy) -> bool:
    for (px, py), (qx, qy), (rx, ry) in (
        ((ax, ay), (bx, by), (cx, cy)),
        ((bx, by), (ax, ay), (cx, cy)),
        ((cx, cy), (ax, ay), (bx, by)),
    ):
        ux, uy, vx, vy = qx - px, qy - py, rx - px, ry - py
        if ux * vx + uy * vy == 0 and ux * ux + uy * uy == vx * vx + vy * vy:
            return True
    return False


def estimated_nodes(n: int, w: int) -> int:
    """Leaf count bound once the first point is pinned to column zero."""
    return w * math.comb(w * w - 1, n - 1)


def default_window(n: int, budget: int = DEFAULT_BUDGET) -> int:
    """5 for n <= 7; for larger n the widest window up to 7 that fits the budget."""
    if n <= 7:
        return 5
    for w in (7, 6):
        if estimated_nodes(n, w) <= budget:
            return w
    return 5


def _search_branch(n: int, w: int, first: int, floor: int, prune: bool,
                   earlier: list[list[int]]) -> tuple[int, int]:
    """Best (count, mask) among normalized n-subsets whose smallest cell is ``first``.

    Only counts strictly above ``floor`` are reported; (floor, 0) means none.
    """
    cells = w * w
    last_y0 = (w - 1) * w
    best = floor
    best_mask = 0

    def gain(v: int, mask: int) -> int:
        return sum(1 for m in earlier[v] if mask & m == m)

    def node(start: int, mask: int, s: int, count: int, has_y0: bool) -> None:
        nonlocal best, best_mask
        r = n - s
        stop = cells - r + 1
        if not has_y0 and start > last_y0:
            return
        gains = [gain(v, mask) for v in range(start, stop)]
        if r == 1:
            for off, g in enumerate(gains):
                v = start + off
                if count + g > best and (has_y0 or v % w == 0):
                    best = count + g
                    best_mask = mask | (1 << v)
            return
        if prune:
            top = sorted(gains, reverse=True)[:r]
            extra = min(sum(top) + 3 * r * (r - 1), sum(3 * (s + j) for j in range(r)))
            if count + extra <= best:
                return
        for off, g in enumerate(gains):
            v = start + off
            if not has_y0 and v > last_y0:
                break
            node(v + 1, mask | (1 << v), s + 1, count + g, has_y0 or v % w == 0)

    node(first + 1, 1 << first, 1, 0, first % w == 0)
    return best, best_mask


def _branch_job(args):
    return _search_branch(*args)


def exhaustive_max(n: int, window: int | None = None, *, prune: bool = True, budget: int = DEFAULT_BUDGET,
                   incumbent: int = 0, workers: int = 1) -> SearchRecord:
    """Exact maximum IRT count over n-subsets of the w x w integer grid.

    Subsets are taken up to translation (they must touch row 0 and column 0).
    The returned witness is the lexicographically least maximizer.
    ``incumbent`` is a known achievable count; branches that cannot reach it
    are skipped, so a value above the true window maximum is an error.
    """
    if not 3 <= n <= 9:
        raise ValueError("exhaustive search supports 3 <= n <= 9")
    w = default_window(n, budget) if window is None else window
    if not 1 <= w <= 7 or w * w < n:
        raise ValueError(f"window must be at most 7 and hold n points, got {w}")
    est = estimated_nodes(n, w)
    if est > budget:
        raise SearchBudgetExceeded(f"n={n}, window {w}x{w}: ~{est:,} leaves exceeds budget {budget:,}")
    t0 = time.perf_counter()
    earlier = _window_triples(w)
    floor = incumbent - 1
    if workers > 1:
        jobs = [(n, w, first, floor, prune, earlier) for first in range(w)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_branch_job, jobs))
    else:
        # serial branches inherit the running best, which only ever rises
        results, running = [], floor
        for first in range(w):
            count, m = _search_branch(n, w, first, running, prune, earlier)
            results.append((count, m))
            running = max(running, count)
    best, mask = floor, 0
    for count, m in results:  # ascending first cell, so ties keep the lex-least set
        if m and count > best:
            best, mask = count, m
    if not mask:
        raise ValueError(f"no {n}-subset of the {w}x{w} window reaches {incumbent} IRTs")
    witness = PointSet(point(i // w, i % w) for i in range(w * w) if mask >> i & 1)
    return SearchRecord(n, best, witness, "exhaustive", f"{w}x{w}", time.perf_counter() - t0,
                        {"pruned": prune})


# --- lower-bound table -----------------------------------------------------

def canonical_key(P: PointSet) -> tuple:
    """Key shared by all translates and D4 images of P."""
    pts = P.points
    best = None
    for flags in range(8):
        q = []
        for p in pts:
            x, y = p
            if flags & 1:
                x, y = y, x
            if flags & 2:
                x = -x
            if flags & 4:
                y = -y
            q.append((x, y))
        mx = min(a for a, _ in q)
        my = min(b for _, b in q)
        key = tuple(sorted((a - mx, b - my) for a, b in q))
        if best is None or key < best:
            best = key
    return best


def best_deletion(P: PointSet) -> tuple[Point, int]:
    """The point whose removal loses the fewest IRTs, and the count left."""
    prof = degree_profile(P)
    total = sum(prof.deg90)
    loss, p = min((a + b + c, p) for p, a, b, c in prof.rows())
    return p, total - loss


def beam_build(seeds: Sequence[tuple[str, PointSet]], n_target: int, width: int = 30,
               branch: int = 6) -> dict[int, SearchRecord]:
    """Breadth-limited version of greedy growth.

    At every size keep the ``width`` best distinct sets (up to translation and
    D4), and extend each by its ``branch`` best candidates.
    """
    t0 = time.perf_counter()
    pool: dict[int, dict[tuple, tuple[int, str, PointSet]]] = {}
    for label, seed in seeds:
        if 2 <= len(seed) <= n_target:
            pool.setdefault(len(seed), {}).setdefault(canonical_key(seed), (count_irt(seed), label, seed))
    best: dict[int, SearchRecord] = {}
    if not pool:
        return best
    for n in range(min(pool), n_target + 1):
        layer = sorted(pool.get(n, {}).values(), key=lambda t: (-t[0], t[1]))[:width]
        if not layer:
            continue
        count, label, P = layer[0]
        best[n] = SearchRecord(n, count, P, "beam", label, time.perf_counter() - t0)
        if n == n_target:
            break
        nxt = pool.setdefault(n + 1, {})
        for count, label, P in layer:
            for sc in best_extension(P)[:branch]:
                Q = P.with_point(sc.candidate)
                nxt.setdefault(canonical_key(Q), (sc.total_after, label, Q))
    return best


def default_seeds() -> list[tuple[str, PointSet]]:
    seeds = [
        ("irt", PointSet([point(0, 0), point(1, 0), point(0, 1)])),
        ("square", square_grid(2)),
        ("grid3", square_grid(3)),
    ]
    seeds += [(f"disk{k}", disk_lattice(k)) for k in range(9, 13)]
    return seeds


def extended_seeds(n_max: int = 25) -> list[tuple[str, PointSet]]:
    """Default seeds plus small disks about three lattice-symmetric centers."""
    seeds = default_seeds()
    for cx, cy, tag in ((0, 0, ""), (HALF, HALF, "h"), (HALF, 0, "e")):
        c = point(cx, cy)
        seeds += [(f"disk{k}{tag}", disk_lattice(k, Lattice.INTEGER, c)) for k in range(3, n_max - 3)]
    return seeds


@dataclass(frozen=True)
class TableRow:
    n: int
    achieved: int
    published: int | None
    upper: int
    disk_baseline: int
    record: SearchRecord


def lower_bound_table(seeds: Sequence[tuple[str, PointSet]] | None = None,
                      n_min: int = 10, n_max: int = 25, beam_width: int = 30,
                      beam_branch: int = 6, deletion_pass: bool = True) -> list[TableRow]:
    """Best construction found for each n in [n_min, n_max].

    Every seed is grown greedily; with ``beam_width > 1`` a beam search from
    the same seeds runs as well. The deletion pass then tries the best record
    at n + 1 with its least-involved point removed.
    """
    seeds = extended_seeds(n_max) if seeds is None else list(seeds)
    best: dict[int, SearchRecord] = {}

    def offer(rec: SearchRecord) -> None:
        cur = best.get(rec.n)
        if cur is None or rec.best_count > cur.best_count:
            best[rec.n] = rec

    for label, seed in seeds:
        if 2 <= len(seed) <= n_max:
            for rec in greedy_build(seed, n_max, label):
                offer(rec)
    if beam_width > 1:
        for rec in beam_build(seeds, n_max, beam_width, beam_branch).values():
            offer(rec)
    if deletion_pass:
        for n in range(n_max - 1, n_min - 1, -1):
            above = best.get(n + 1)
            if above is None:
                continue
            p, count = best_deletion(above.witness)
            offer(SearchRecord(n, count, PointSet(q for q in above.witness if q != p), "deletion",
                               above.window, above.runtime))
    rows = []
    for n in range(n_min, n_max + 1):
        if n in best:
            rec = best[n]
            rows.append(TableRow(n, rec.best_count, PUBLISHED_LOWER_BOUNDS.get(n),
                                 diameter_upper(n), count_irt(disk_lattice(n)), rec))
    return rows


def table_rows_csv(rows: Iterable[TableRow]) -> list[list]:
    out = [["n", "achieved", "published_lower_bound", "upper_bound", "disk_baseline", "method", "seed"]]
    for r in rows:
        out.append([r.n, r.achieved, "" if r.published is None else r.published, r.upper,
                    r.disk_baseline, r.record.method, r.record.window])
    return out
