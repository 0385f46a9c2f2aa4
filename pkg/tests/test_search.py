import json
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings

from irt_lab.bounds import diameter_upper
from irt_lab.counting import count_irt, count_irt_oracle
from irt_lab.geometry import PointSet, point
from irt_lab.lattice import disk_lattice, square_grid
from irt_lab.search import (SearchBudgetExceeded, SearchRecord, best_deletion, best_extension, beam_build,
                            candidate_points, canonical_key, default_seeds, default_window, estimated_nodes,
                            exhaustive_max, greedy_build, lower_bound_table, table_rows_csv)

from conftest import point_sets

UNIT_IRT = PointSet([point(0, 0), point(1, 0), point(0, 1)])
BIG_SQUARE = PointSet([point(0, 0), point(2, 0), point(2, 2), point(0, 2)])
H = Fraction(1, 2)


def test_candidate_examples():
    C = candidate_points(PointSet([point(0, 0), point(1, 0)]))
    want = {point(0, 1), point(0, -1), point(1, 1), point(1, -1), point(H, H), point(H, -H)}
    assert set(C) == want
    with pytest.raises(ValueError):
        candidate_points(PointSet([point(0, 0)]))


@settings(max_examples=60, deadline=None)
@given(point_sets)
def test_candidate_count_bound(P):
    if len(P) < 2:
        return
    C = candidate_points(P)
    assert len(C) <= 6 * len(P) * (len(P) - 1) // 2
    assert not set(C) & set(P)


def test_candidates_are_complete():
    rng = random.Random(11)
    found = 0
    while found < 200:
        k = rng.randint(2, 8)
        P = PointSet(point(Fraction(rng.randint(-6, 6), 2), Fraction(rng.randint(-6, 6), 2)) for _ in range(k))
        if len(P) < 2:
            continue
        z = point(Fraction(rng.randint(-8, 8), 2), Fraction(rng.randint(-8, 8), 2))
        if z in P or count_irt_oracle(P.with_point(z)) == count_irt_oracle(P):
            continue
        found += 1
        assert z in candidate_points(P)


def test_best_extension_examples():
    scores = best_extension(UNIT_IRT)
    assert (scores[0].candidate, scores[0].total_after) == (point(1, 1), 4)
    # the rest tie at two new IRTs and come in lexicographic order
    assert [s.candidate for s in scores[1:4]] == [point(-1, 0), point(0, -1), point(H, H)]
    top = best_extension(BIG_SQUARE)[0]
    assert (top.candidate, top.total_after) == (point(1, 1), 8)
    assert all(s.new_irts == 1 for s in best_extension(PointSet([point(0, 0), point(3, 1)])))


@settings(max_examples=40, deadline=None)
@given(point_sets)
def test_best_extension_matches_oracle(P):
    if not 2 <= len(P) <= 10:
        return
    base = count_irt_oracle(P)
    scores = best_extension(P)
    for s in scores:
        assert s.total_after == count_irt_oracle(P.with_point(s.candidate))
        assert s.new_irts == s.total_after - base
    keys = [(-s.new_irts, s.candidate) for s in scores]
    assert keys == sorted(keys)


def test_greedy_examples():
    recs = greedy_build(UNIT_IRT, 5)
    assert [r.n for r in recs] == [3, 4, 5]
    assert all(r.best_count >= want for r, want in zip(recs, (1, 4, 8)))
    recs = greedy_build(square_grid(3), 9)
    assert len(recs) == 1 and recs[0].best_count == 28
    for r in greedy_build(square_grid(3), 14, "grid3"):
        assert count_irt(r.witness) == r.best_count <= diameter_upper(r.n)
        assert len(r.witness) == r.n
    with pytest.raises(ValueError):
        greedy_build(UNIT_IRT, 2)
    with pytest.raises(ValueError):
        greedy_build(PointSet([point(0, 0)]), 4)


def test_greedy_is_deterministic():
    a = [r.witness for r in greedy_build(disk_lattice(9), 13)]
    b = [r.witness for r in greedy_build(disk_lattice(9), 13)]
    assert a == b


def _brute_window_max(n, w):
    """Lex-least maximizer among n-subsets touching row 0 and column 0."""
    cells = [point(i, j) for i in range(w) for j in range(w)]
    best, witness = -1, None
    for combo in combinations(cells, n):
        if min(p.x for p in combo) or min(p.y for p in combo):
            continue
        c = count_irt(PointSet(combo))
        if c > best:
            best, witness = c, PointSet(combo)
    return best, witness


@pytest.mark.parametrize("n, w", [(3, 3), (4, 3), (5, 3), (4, 4), (5, 4)])
def test_exhaustive_matches_brute_force(n, w):
    best, witness = _brute_window_max(n, w)
    for prune in (True, False):
        rec = exhaustive_max(n, w, prune=prune)
        assert rec.best_count == best
        assert rec.witness == witness
        assert rec.window == f"{w}x{w}" and rec.method == "exhaustive"


@pytest.mark.parametrize("n", [3, 4, 5])
def test_pruning_changes_nothing_on_4x4(n):
    assert exhaustive_max(n, 4, prune=True).best_count == exhaustive_max(n, 4, prune=False).best_count


def test_window_monotonicity():
    for n in (4, 5, 6):
        values = [exhaustive_max(n, w).best_count for w in range(3, 6)]
        assert values == sorted(values)


@pytest.mark.parametrize("n, want", [(3, 1), (4, 4), (5, 8), (6, 11)])
def test_exhaustive_small_values(n, want):
    rec = exhaustive_max(n, 5)
    assert rec.best_count == want == count_irt(rec.witness)


def test_exhaustive_incumbent_and_errors():
    assert exhaustive_max(5, 4, incumbent=8).best_count == 8
    with pytest.raises(ValueError):
        exhaustive_max(5, 4, incumbent=9)
    with pytest.raises(ValueError):
        exhaustive_max(2, 4)
    with pytest.raises(ValueError):
        exhaustive_max(5, 8)
    with pytest.raises(ValueError):
        exhaustive_max(9, 2)
    with pytest.raises(SearchBudgetExceeded):
        exhaustive_max(9, 7, budget=10**6)


def test_exhaustive_parallel_matches_serial():
    serial = exhaustive_max(5, 4)
    parallel = exhaustive_max(5, 4, workers=2)
    assert (serial.best_count, serial.witness) == (parallel.best_count, parallel.witness)


def test_default_window():
    assert default_window(5) == 5
    assert default_window(8) == default_window(9) == 6
    assert default_window(8, budget=estimated_nodes(8, 6)) == 6
    assert default_window(9, budget=10**12) == 7
    assert default_window(9, budget=10) == 5


def test_scaling_by_two_keeps_counts():
    for P in (square_grid(3), disk_lattice(20), UNIT_IRT):
        assert count_irt(P.scaled(2)) == count_irt(P)


def test_record_json_round_trip():
    rec = greedy_build(PointSet([point(0, 0), point(1, 0), point(H, H)]), 5, "half")[-1]
    obj = json.loads(json.dumps(rec.to_json()))
    assert all(isinstance(c, str) and "/" in c for pt in obj["witness"] for c in pt)
    back = SearchRecord.from_json(obj)
    assert back.witness == rec.witness and back.best_count == rec.best_count
    assert count_irt(back.witness) == back.best_count


def test_canonical_key_is_similarity_class_key():
    P = disk_lattice(11)
    key = canonical_key(P)
    assert canonical_key(P.translated(3, -2)) == key
    assert canonical_key(P.rotated90(point(5, 1))) == key
    assert canonical_key(PointSet(point(p.y, p.x) for p in P)) == key
    assert canonical_key(square_grid(3)) != key


def test_best_deletion():
    P = square_grid(3).with_point(point(7, 7))
    p, count = best_deletion(P)
    assert p == point(7, 7) and count == 28


def test_beam_returns_valid_records():
    best = beam_build(default_seeds(), 12, width=5, branch=3)
    for n, rec in best.items():
        assert rec.n == n == len(rec.witness)
        assert count_irt(rec.witness) == rec.best_count <= diameter_upper(n)


def test_small_table():
    rows = lower_bound_table(default_seeds(), n_min=10, n_max=13, beam_width=5, beam_branch=3)
    assert [r.n for r in rows] == [10, 11, 12, 13]
    for r in rows:
        assert r.disk_baseline <= r.achieved <= r.upper
        assert count_irt(r.record.witness) == r.achieved
    csv_rows = table_rows_csv(rows)
    assert csv_rows[0][:5] == ["n", "achieved", "published_lower_bound", "upper_bound", "disk_baseline"]
    assert csv_rows[1][2] == 35
