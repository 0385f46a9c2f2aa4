"""Upper bounds on the IRT count and an executable check of the structural
facts behind the quadratic upper bound, measured at a diameter pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .counting import deg45, deg90
from .geometry import Point, PointSet, rot45_minus, rot90


class VerificationFailure(AssertionError):
    """A structural property that must hold for every point set did not.

    Either the implementation is wrong or the input is a counterexample.
    """


def trivial_upper(n: int) -> int:
    """Each pair lies in at most six IRTs: n^2 - n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return n * n - n


def diameter_upper(n: int) -> int:
    """floor((2(n-1)^2 - 5) / 3), valid for n >= 3."""
    if n < 3:
        raise ValueError("bound is stated for n >= 3")
    return (2 * (n - 1) ** 2 - 5) // 3


def averaging_upper(n: int, k: int, b: int) -> int:
    """Bound on an n-set whose k-subsets each hold at most ``b`` IRTs."""
    if not 3 <= k <= n:
        raise ValueError("need 3 <= k <= n")
    if b < 0:
        raise ValueError("b must be nonnegative")
    return n * (n - 1) * (n - 2) * b // (k * (k - 1) * (k - 2))


def pair_degree_cap(n: int, gap: int = 0) -> int:
    """Largest possible deg90(x) + deg90(y) at a diameter pair.

    ``gap`` is that sum minus the edge count of the quarter-turn graph. With
    gap 0 the cap is 2(n-2)/3. With gap 1 one edge is counted from both ends
    and the cap rises to (2n-2)/3; the unit square (n = 4, sum 2) attains it.
    """
    return (2 * n - 4 + 2 * gap) // 3


def diameter_pair(P: PointSet) -> tuple[Point, Point]:
    """A farthest pair; among ties the lexicographically smallest (sorted) pair."""
    best = None
    for p, q in combinations(P.sorted(), 2):
        d2 = (p.x - q.x) ** 2 + (p.y - q.y) ** 2
        key = (-d2, p, q)
        if best is None or key < best:
            best = key
    if best is None:
        raise ValueError("need at least two points")
    return best[1], best[2]


@dataclass(frozen=True)
class DiameterReport:
    n: int
    diameter_pair: tuple[Point, Point]
    nx_size: int
    ny_size: int
    nx_cap_ny: int
    edge_count: int
    max_graph_degree: int
    max_path_length: int
    deg90_sum_xy: int
    deg45_plus_sum_xy: int
    deg45_minus_sum_xy: int
    min_total_degree_xy: int
    double_rotation_hits: int

    def violations(self) -> list[str]:
        n = self.n
        out = []
        if self.nx_cap_ny > 1:
            out.append(f"|N_x ∩ N_y| = {self.nx_cap_ny} > 1")
        if self.double_rotation_hits:
            out.append(f"{self.double_rotation_hits} points with both quarter-turn images in P")
        if self.max_graph_degree > 2:
            out.append(f"graph degree {self.max_graph_degree} > 2")
        if self.max_path_length > 2:
            out.append(f"graph path of length {self.max_path_length} > 2")
        gap = self.deg90_sum_xy - self.edge_count
        if not 0 <= gap <= 1:
            out.append(f"deg90 pair sum minus edge count = {gap}, not in [0, 1]")
        elif self.deg90_sum_xy > pair_degree_cap(n, gap):
            out.append(f"deg90 pair sum {self.deg90_sum_xy} > {pair_degree_cap(n, gap)}")
        for name, s in (("plus", self.deg45_plus_sum_xy), ("minus", self.deg45_minus_sum_xy)):
            if s > n - 1:
                out.append(f"deg45 {name} pair sum {s} > n - 1 = {n - 1}")
        cap = (4 * n - 5) // 3
        if self.min_total_degree_xy > cap:
            out.append(f"min total degree at diameter pair {self.min_total_degree_xy} > {cap}")
        return out


def _longest_path(adj: dict[Point, set[Point]]) -> int:
    # only called once degrees are known to be <= 2, so every component is
    # a path or a cycle and its longest path has (size - 1) edges
    seen: set[Point] = set()
    longest = 0
    for start in adj:
        if start in seen:
            continue
        stack, size = [start], 0
        seen.add(start)
        while stack:
            u = stack.pop()
            size += 1
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        longest = max(longest, size - 1)
    return longest


def _longest_simple_path(adj: dict[Point, set[Point]]) -> int:
    best = 0

    def walk(u, visited, length):
        nonlocal best
        best = max(best, length)
        for v in adj[u]:
            if v not in visited:
                visited.add(v)
                walk(v, visited, length + 1)
                visited.discard(v)

    for u in adj:
        walk(u, {u}, 0)
    return best


def diameter_report(P: PointSet, check: bool = True) -> DiameterReport:
    """Measure the diameter-pair quantities of P.

    With ``check`` (the default) a :class:`VerificationFailure` is raised when
    any of the guaranteed inequalities fails.
    """
    n = len(P)
    if n < 3:
        raise ValueError("need at least three points")
    x, y = diameter_pair(P)

    nx = {q for q in (rot45_minus(x, p) for p in P) if q in P} - {x}
    ny = {q for q in (rot45_minus(y, p) for p in P) if q in P} - {y}

    rest = [p for p in P if p != x and p != y]
    adj: dict[Point, set[Point]] = {u: set() for u in rest}
    double = 0
    for u in rest:
        hx, hy = rot90(x, u), rot90(y, u)
        double += (hx in P) and (hy in P)
        for v in (hx, hy):
            if v in adj and v != u:
                adj[u].add(v)
                adj[v].add(u)
    edges = sum(len(s) for s in adj.values()) // 2
    max_deg = max((len(s) for s in adj.values()), default=0)
    path = _longest_path(adj) if max_deg <= 2 else _longest_simple_path(adj)

    d90 = deg90(P, x), deg90(P, y)
    dp = deg45(P, x, "plus"), deg45(P, y, "plus")
    dm = deg45(P, x, "minus"), deg45(P, y, "minus")
    report = DiameterReport(
        n=n,
        diameter_pair=(x, y),
        nx_size=len(nx),
        ny_size=len(ny),
        nx_cap_ny=len(nx & ny),
        edge_count=edges,
        max_graph_degree=max_deg,
        max_path_length=path,
        deg90_sum_xy=sum(d90),
        deg45_plus_sum_xy=sum(dp),
        deg45_minus_sum_xy=sum(dm),
        min_total_degree_xy=min(d90[0] + dp[0] + dm[0], d90[1] + dp[1] + dm[1]),
        double_rotation_hits=double,
    )
    if check:
        bad = report.violations()
        if bad:
            raise VerificationFailure(f"diameter pair {x}, {y}: " + "; ".join(bad))
    return report


def deg45_pair_bounds(P: PointSet) -> tuple[int, int]:
    """45-degree degree sums at the diameter pair, each at most n - 1."""
    n = len(P)
    if n < 3:
        raise ValueError("need at least three points")
    x, y = diameter_pair(P)
    plus = deg45(P, x, "plus") + deg45(P, y, "plus")
    minus = deg45(P, x, "minus") + deg45(P, y, "minus")
    if plus > n - 1 or minus > n - 1:
        raise VerificationFailure(f"45-degree pair sums ({plus}, {minus}) exceed n - 1 = {n - 1}")
    return plus, minus
