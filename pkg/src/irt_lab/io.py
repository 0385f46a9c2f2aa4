"""Text formats: point files, JSON lines for search records, CSV tables."""

from __future__ import annotations

import csv
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterable, Sequence

from .geometry import Point, PointSet

_COORD = re.compile(r"^[+-]?\d+(/\d+)?$")


class PointFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _coord(tok: str, lineno: int) -> Fraction:
    if not _COORD.match(tok):
        raise PointFileError(f"bad coordinate {tok!r} (expected int or int/int)", lineno)
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise PointFileError(f"zero denominator in {tok!r}", lineno) from None


def parse_points(text: str) -> PointSet:
    """Parse one ``x y`` point per line; '#' comments and blank lines are skipped."""
    seen: dict[Point, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) != 2:
            raise PointFileError(f"expected two coordinates, got {len(toks)}", lineno)
        p = Point(_coord(toks[0], lineno), _coord(toks[1], lineno))
        if p in seen:
            raise PointFileError(f"duplicate point {toks[0]} {toks[1]} (first on line {seen[p]})", lineno)
        seen[p] = lineno
    return PointSet(seen)


def read_points(path: str | Path) -> PointSet:
    if str(path) == "-":
        return parse_points(sys.stdin.read())
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise PointFileError(f"cannot read {path}: {exc.strerror}") from None
    return parse_points(text)


def format_points(P: Iterable[Point], comments: Sequence[str] = ()) -> str:
    lines = [f"{p.x} {p.y}" for p in P]
    lines += [f"# {c}" for c in comments]
    return "\n".join(lines) + "\n"


def write_jsonl(records: Iterable, fh: IO[str]) -> None:
    for rec in records:
        obj = rec.to_json() if hasattr(rec, "to_json") else rec
        fh.write(json.dumps(obj) + "\n")


def read_jsonl(fh: IO[str]) -> list[dict]:
    return [json.loads(line) for line in fh if line.strip()]


def write_csv(rows: Iterable[Sequence], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerows(rows)
