"""Command-line interface: ``irt-lab <command> ...``.

Exit codes: 0 ok, 2 bad input, 3 oracle mismatch, 4 search budget exceeded,
5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .bounds import VerificationFailure
from .coefficient import coefficient_c, curve_samples, optimize_c
from .counting import ORACLE_CAP, count_irt, count_irt_oracle, degree_profile
from .geometry import PointSet, point
from .io import PointFileError, format_points, read_points, write_csv, write_jsonl
from .lattice import Lattice, TwoDiskParams, disk_lattice, square_grid, two_disk
from .search import (DEFAULT_BUDGET, SearchBudgetExceeded, default_seeds, exhaustive_max,
                     extended_seeds, greedy_build, lower_bound_table, table_rows_csv)
from .verify import bounds_suite, bounds_table, lemma_suite

EXIT_INPUT = 2
EXIT_ORACLE = 3
EXIT_BUDGET = 4
EXIT_VERIFY = 5


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("IRT_LAB_THREADS")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        raise CliError(f"IRT_LAB_THREADS must be an integer, got {env!r}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


# --- commands --------------------------------------------------------------

def cmd_count(args) -> int:
    P = read_points(args.input)
    total = count_irt(P)
    if args.oracle:
        if len(P) > ORACLE_CAP:
            raise CliError(f"--oracle is limited to {ORACLE_CAP} points (got {len(P)})")
        slow = count_irt_oracle(P)
        if slow != total:
            print(f"oracle mismatch: fast={total} oracle={slow}", file=sys.stderr)
            return EXIT_ORACLE
    prof = degree_profile(P) if args.degrees else None
    if args.json:
        out = {"n": len(P), "count": total}
        if prof is not None:
            out["degrees"] = [
                {"point": [str(p.x), str(p.y)], "deg90": a, "deg45_plus": b, "deg45_minus": c}
                for p, a, b, c in prof.rows()
            ]
        print(json.dumps(out))
        return 0
    print(total)
    if prof is not None:
        print("# x y deg90 deg45_plus deg45_minus")
        for p, a, b, c in prof.rows():
            print(f"{p.x} {p.y} {a} {b} {c}")
    return 0


def cmd_construct(args) -> int:
    if args.kind == "grid":
        if args.k is None or args.k < 1:
            raise CliError("grid needs --k >= 1")
        P = square_grid(args.k)
    elif args.kind == "disk":
        if args.n is None or args.n < 1:
            raise CliError("disk needs --n >= 1")
        center = point(*args.center) if args.center else point(0, 0)
        P = disk_lattice(args.n, Lattice(args.lattice), center)
    else:
        if args.n is None or args.x is None:
            raise CliError("two-disk needs --n and --x")
        try:
            A, B = two_disk(TwoDiskParams(args.n, args.x))
        except ValueError as exc:
            raise CliError(str(exc)) from None
        P = A.union(B)
    comments = [f"irt_count {count_irt(P)}"] if args.count else []
    sys.stdout.write(format_points(P, comments))
    return 0


def cmd_coefficient(args) -> int:
    if args.optimize:
        x, c = optimize_c()
        print(f"x_star {x:.10f}")
        print(f"c_star {c:.10f}")
        return 0
    if args.curve:
        lo, hi, steps = args.curve
        try:
            rows = curve_samples(float(lo), float(hi), int(steps))
        except ValueError as exc:
            raise CliError(str(exc)) from None
        write_csv([["x", "c", "branch"]] + [[f"{x:.10g}", f"{c:.12f}", b] for x, c, b in rows],
                  sys.stdout)
        return 0
    try:
        res = coefficient_c(args.x)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    print(f"x {res.x:.10g}")
    print(f"c {res.value:.12f}")
    print(f"branch {res.branch}")
    for name, v in zip(("all_in_A", "all_in_B", "right_angle_in_B", "right_angle_in_A"), res.cases):
        print(f"case {name} {v:.12f}")
    return 0


def _seed_sets(names: list[str] | None) -> list[tuple[str, PointSet]]:
    if not names:
        return default_seeds()
    named = {label: P for label, P in extended_seeds()}
    out = []
    for name in names:
        if name in named:
            out.append((name, named[name]))
        elif name.startswith("disk") and name[4:].isdigit():
            out.append((name, disk_lattice(int(name[4:]))))
        elif name.startswith("grid") and name[4:].isdigit():
            out.append((name, square_grid(int(name[4:]))))
        else:
            out.append((name, read_points(name)))
    return out


def cmd_search(args) -> int:
    out = sys.stdout
    if args.mode == "exhaustive":
        if args.n is None:
            raise CliError("exhaustive search needs --n")
        try:
            rec = exhaustive_max(args.n, args.window, prune=not args.no_prune, budget=args.budget,
                                 workers=_threads(args))
        except SearchBudgetExceeded as exc:
            print(f"budget exceeded: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        except ValueError as exc:
            raise CliError(str(exc)) from None
        write_jsonl([rec], out)
        return 0
    if args.mode == "greedy":
        if args.n is None:
            raise CliError("greedy search needs --n")
        for label, seed in _seed_sets(args.seed):
            if len(seed) < 2 or args.n < len(seed):
                raise CliError(f"seed {label} has {len(seed)} points; need 2 <= |seed| <= n")
            recs = greedy_build(seed, args.n, label)
            # the seed itself is only reported when no growth was requested
            write_jsonl(recs[1:] or recs, out)
        return 0
    seeds = _seed_sets(args.seed) if args.seed else None
    rows = lower_bound_table(seeds, n_min=args.n_min, n_max=args.n_max, beam_width=args.beam_width,
                             beam_branch=args.beam_branch)
    if args.jsonl:
        with open(args.jsonl, "w") as fh:
            write_jsonl([r.record for r in rows], fh)
    write_csv(table_rows_csv(rows), out)
    return 0


def cmd_verify(args) -> int:
    results = []
    if args.suite in ("bounds", "all"):
        write_csv([["n", "trivial_upper", "upper_bound"]] + [list(r) for r in bounds_table(args.n_max)],
                  sys.stdout)
        results += bounds_suite(args.n_max)
    if args.suite in ("lemmas", "all"):
        results += lemma_suite(args.sets, args.seed)
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else EXIT_VERIFY


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="irt-lab", description="Isosceles right triangle counting toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--threads", type=int, default=None,
                   help="worker processes (default: $IRT_LAB_THREADS or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="count IRTs in a point file ('-' for stdin)")
    c.add_argument("input")
    c.add_argument("--oracle", action="store_true", help="cross-check with the cubic oracle")
    c.add_argument("--degrees", action="store_true", help="print per-point degrees")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_count)

    k = sub.add_parser("construct", help="emit a lattice construction as a point file")
    k.add_argument("kind", choices=["grid", "disk", "two-disk"])
    k.add_argument("--k", type=int, help="grid side length")
    k.add_argument("--n", type=int, help="number of points")
    k.add_argument("--x", type=_fraction, help="two-disk size ratio in (0, 1)")
    k.add_argument("--lattice", choices=[m.value for m in Lattice], default="integer")
    k.add_argument("--center", nargs=2, type=_fraction, metavar=("X", "Y"))
    k.add_argument("--count", action="store_true", help="append the IRT count as a comment")
    k.set_defaults(func=cmd_construct)

    f = sub.add_parser("coefficient", help="two-disk n^2 coefficient")
    g = f.add_mutually_exclusive_group(required=True)
    g.add_argument("--x", type=float)
    g.add_argument("--curve", nargs=3, metavar=("MIN", "MAX", "STEPS"))
    g.add_argument("--optimize", action="store_true")
    f.set_defaults(func=cmd_coefficient)

    s = sub.add_parser("search", help="extremal search")
    s.add_argument("mode", choices=["exhaustive", "greedy", "table"])
    s.add_argument("--n", type=int)
    s.add_argument("--window", type=int, default=None,
                   help="grid side (default 5, wider for n >= 8 when the budget allows)")
    s.add_argument("--no-prune", action="store_true")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--seed", action="append",
                   help="seed name (irt, square, gridK, diskK) or point file; repeatable")
    s.add_argument("--n-min", type=int, default=10)
    s.add_argument("--n-max", type=int, default=25)
    s.add_argument("--beam-width", type=int, default=30)
    s.add_argument("--beam-branch", type=int, default=6)
    s.add_argument("--jsonl", help="also write the table's witness records here")
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify", help="randomized lemma and bound checks")
    v.add_argument("suite", choices=["lemmas", "bounds", "all"])
    v.add_argument("--sets", type=int, default=500)
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--n-max", type=int, default=25)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PointFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
