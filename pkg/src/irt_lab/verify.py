"""Randomized check suites behind ``irt-lab verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .bounds import (VerificationFailure, averaging_upper, diameter_report, diameter_upper,
                     trivial_upper)
from .counting import count_irt, degree_profile
from .randomsets import random_point_set
from .search import KNOWN_MAXIMA, PUBLISHED_LOWER_BOUNDS


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        msg = f"{status} {self.name} ({self.checked} checked)"
        if self.failures:
            msg += f": {self.failures[0]}"
        return msg


def lemma_suite(sets: int = 500, seed: int = 1, n_min: int = 5, n_max: int = 40) -> list[CheckResult]:
    rng = random.Random(seed)
    report_chk = CheckResult("diameter-pair invariants")
    degree_chk = CheckResult("degree sums agree with count")
    bound_chk = CheckResult("count within upper bounds")
    for i in range(sets):
        n = rng.randint(n_min, n_max)
        P = random_point_set(rng, n)
        try:
            diameter_report(P)
        except VerificationFailure as exc:
            report_chk.failures.append(f"set {i}: {exc}")
        report_chk.checked += 1

        total = count_irt(P)
        sums = degree_profile(P).totals()
        if sums != (total, total, total):
            degree_chk.failures.append(f"set {i}: sums {sums} vs count {total}")
        degree_chk.checked += 1

        if not total <= diameter_upper(n) <= trivial_upper(n):
            bound_chk.failures.append(f"set {i}: count {total}, n={n}")
        bound_chk.checked += 1
    return [report_chk, degree_chk, bound_chk]


def bounds_table(n_max: int = 25) -> list[tuple[int, int, int]]:
    return [(n, trivial_upper(n), diameter_upper(n)) for n in range(3, n_max + 1)]


def bounds_suite(n_max: int = 25) -> list[CheckResult]:
    order = CheckResult("diameter bound below trivial bound")
    for n, triv, up in bounds_table(n_max):
        order.checked += 1
        if up > triv:
            order.failures.append(f"n={n}: {up} > {triv}")

    known = CheckResult("exact small values within bound")
    for n, v in KNOWN_MAXIMA.items():
        known.checked += 1
        if v > diameter_upper(n):
            known.failures.append(f"n={n}: {v} > {diameter_upper(n)}")

    published = CheckResult("published lower bounds within bound")
    for n, v in PUBLISHED_LOWER_BOUNDS.items():
        published.checked += 1
        if v > diameter_upper(n):
            published.failures.append(f"n={n}: {v} > {diameter_upper(n)}")

    averaging = CheckResult("averaging bound steps for n = 5, 6, 7")
    for (n, k, b), want in (((5, 4, 1), 2), ((6, 5, 4), 8), ((7, 6, 8), 14)):
        averaging.checked += 1
        got = averaging_upper(n, k, b)
        if got != want:
            averaging.failures.append(f"averaging_upper{(n, k, b)} = {got}, expected {want}")
    for n, v in KNOWN_MAXIMA.items():
        averaging.checked += 1
        if averaging_upper(n, n, v) != v:
            averaging.failures.append(f"averaging_upper({n}, {n}, {v}) != {v}")
    return [order, known, published, averaging]
