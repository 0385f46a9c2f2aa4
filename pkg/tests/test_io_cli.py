import io
import json
import subprocess
import sys

import pytest

import irt_lab.verify
from irt_lab import cli
from irt_lab.bounds import VerificationFailure, diameter_upper
from irt_lab.counting import count_irt
from irt_lab.geometry import PointSet, point
from irt_lab.io import PointFileError, format_points, parse_points, read_jsonl
from irt_lab.lattice import Lattice, disk_lattice, square_grid


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def grid_file(tmp_path):
    path = tmp_path / "grid.txt"
    path.write_text(format_points(square_grid(3)))
    return str(path)


def test_parse_points_formats():
    P = parse_points("# header\n0 0\n\n1/2 -3/4\n  +2   5 \n")
    assert set(P) == {point(0, 0), point("1/2", "-3/4"), point(2, 5)}


@pytest.mark.parametrize("text, line", [
    ("0 0\n1 1\n0 0\n", 3),
    ("0 0\n1.5 2\n", 2),
    ("0 0 0\n", 1),
    ("1/0 2\n", 1),
    ("x y\n", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(PointFileError) as exc:
        parse_points(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


@pytest.mark.parametrize("P", [square_grid(4), disk_lattice(30, Lattice.HALF, point("1/3", "-2/7")),
                               PointSet([point("-5/3", "7/11")])])
def test_format_parse_round_trip(P):
    assert parse_points(format_points(P, ["irt_count 3"])) == P


def test_count_examples(capsys, grid_file, tmp_path):
    assert run(capsys, "count", grid_file)[1].strip() == "28"
    sq = tmp_path / "sq.txt"
    sq.write_text("0 0\n1 0\n1 1\n0 1\n")
    assert run(capsys, "count", str(sq), "--oracle")[1].strip() == "4"


def test_count_degrees_and_json(capsys, grid_file):
    code, out, _ = run(capsys, "count", grid_file, "--degrees")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "28" and "1 1 8 " in out
    code, out, _ = run(capsys, "count", grid_file, "--json", "--degrees")
    obj = json.loads(out)
    assert obj["n"] == 9 and obj["count"] == 28
    assert sum(d["deg90"] for d in obj["degrees"]) == 28


def test_count_duplicate_exits_2(capsys, tmp_path):
    bad = tmp_path / "dup.txt"
    bad.write_text("0 0\n1 0\n0 0\n")
    code, _, err = run(capsys, "count", str(bad))
    assert code == 2 and "line 3" in err


def test_count_missing_file_exits_2(capsys, tmp_path):
    assert run(capsys, "count", str(tmp_path / "nope.txt"))[0] == 2


def test_count_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("0 0\n1 0\n0 1\n"))
    assert run(capsys, "count", "-")[1].strip() == "1"


def test_oracle_mismatch_exits_3(capsys, grid_file, monkeypatch):
    monkeypatch.setattr(cli, "count_irt", lambda P: 27)
    code, _, err = run(capsys, "count", grid_file, "--oracle")
    assert code == 3 and "mismatch" in err


def test_oracle_cap_is_input_error(capsys, tmp_path):
    big = tmp_path / "big.txt"
    big.write_text(format_points(square_grid(8)))
    assert run(capsys, "count", str(big), "--oracle")[0] == 2


def test_construct_grid_and_round_trip(capsys):
    code, out, _ = run(capsys, "construct", "grid", "--k", "3")
    assert code == 0 and len(out.splitlines()) == 9
    assert parse_points(out) == square_grid(3)


def test_construct_disk_pipeline(capsys):
    code, out, _ = run(capsys, "construct", "disk", "--n", "100", "--count")
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    assert len(lines) == 100
    P = parse_points(out)
    total = count_irt(P)
    assert f"# irt_count {total}" in out
    assert abs(total / 100 ** 2 - 0.43169) <= 0.05


def test_construct_half_disk_with_center(capsys):
    code, out, _ = run(capsys, "construct", "disk", "--n", "4", "--lattice", "half", "--center", "0", "0")
    assert parse_points(out) == disk_lattice(4, Lattice.HALF)


def test_construct_two_disk(capsys):
    code, out, _ = run(capsys, "construct", "two-disk", "--n", "100", "--x", "0.0356067")
    P = parse_points(out)
    assert code == 0 and len(P) == 100
    assert sum(Lattice.HALF.contains(p) for p in P) == 3


@pytest.mark.parametrize("argv", [
    ["construct", "grid", "--k", "0"],
    ["construct", "grid"],
    ["construct", "disk", "--n", "-3"],
    ["construct", "two-disk", "--n", "10", "--x", "1.5"],
    ["construct", "two-disk", "--n", "10", "--x", "1/100"],
    ["coefficient", "--x", "1.2"],
    ["coefficient", "--curve", "0.5", "0.1", "10"],
    ["search", "exhaustive"],
    ["search", "exhaustive", "--n", "12"],
    ["search", "greedy", "--n", "5", "--seed", "grid3"],
])
def test_bad_parameters_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["construct", "grid", "--k", "three"])
    assert exc.value.code == 2


def test_coefficient_commands(capsys):
    code, out, _ = run(capsys, "coefficient", "--x", "0.0356067")
    value = float(out.splitlines()[1].split()[1])
    assert code == 0 and abs(value - 0.433064) <= 5e-6
    assert "branch low" in out and out.count("case ") == 4
    code, out, _ = run(capsys, "coefficient", "--optimize")
    x_star = float(out.splitlines()[0].split()[1])
    assert abs(x_star - 0.0356067) <= 1e-5
    code, out, _ = run(capsys, "coefficient", "--curve", "0.01", "0.99", "99")
    rows = out.strip().splitlines()
    assert rows[0] == "x,c,branch" and len(rows) == 100


def test_search_exhaustive(capsys):
    for n, want in ((5, 8), (7, 15)):
        code, out, _ = run(capsys, "search", "exhaustive", "--n", str(n), "--window", "5")
        rec = json.loads(out)
        assert code == 0 and rec["best_count"] == want and rec["window"] == "5x5"


def test_search_budget_exits_4(capsys):
    code, _, err = run(capsys, "search", "exhaustive", "--n", "9", "--window", "7", "--budget", "1000")
    assert code == 4 and "budget" in err


def test_search_greedy_records(capsys):
    code, out, _ = run(capsys, "search", "greedy", "--n", "12", "--seed", "grid3")
    recs = read_jsonl(io.StringIO(out))
    assert [r["n"] for r in recs] == [10, 11, 12]
    assert all(r["best_count"] <= diameter_upper(r["n"]) for r in recs)


def test_search_greedy_from_point_file(capsys, grid_file):
    code, out, _ = run(capsys, "search", "greedy", "--n", "9", "--seed", grid_file)
    recs = read_jsonl(io.StringIO(out))
    assert len(recs) == 1 and recs[0]["best_count"] == 28


def test_search_table_small(capsys, tmp_path):
    path = tmp_path / "recs.jsonl"
    code, out, _ = run(capsys, "search", "table", "--n-min", "10", "--n-max", "11", "--seed", "grid3",
                       "--seed", "disk9", "--beam-width", "1", "--jsonl", str(path))
    rows = out.strip().splitlines()
    assert code == 0 and rows[0].startswith("n,achieved,published_lower_bound")
    assert rows[1].split(",")[2] == "35" and len(rows) == 3
    assert len(path.read_text().splitlines()) == 2


def test_verify_commands(capsys):
    code, out, _ = run(capsys, "verify", "bounds")
    assert code == 0
    assert "3,6,1" in out.splitlines()
    assert "FAIL" not in out
    code, out, _ = run(capsys, "verify", "lemmas", "--sets", "40", "--seed", "1")
    assert code == 0 and out.count("PASS") == 3
    code, out, _ = run(capsys, "verify", "all", "--sets", "10")
    assert code == 0 and out.count("PASS") == 7


def test_verify_failure_exits_5(capsys, monkeypatch):
    def broken(P, check=True):
        raise VerificationFailure("forced")
    monkeypatch.setattr(irt_lab.verify, "diameter_report", broken)
    code, out, _ = run(capsys, "verify", "lemmas", "--sets", "3")
    assert code == 5 and "FAIL" in out


def test_verify_is_deterministic(capsys):
    a = run(capsys, "verify", "lemmas", "--sets", "20", "--seed", "4")[1]
    b = run(capsys, "verify", "lemmas", "--sets", "20", "--seed", "4")[1]
    assert a == b


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("IRT_LAB_THREADS", "lots")
    assert run(capsys, "search", "exhaustive", "--n", "4", "--window", "3")[0] == 2
    monkeypatch.setenv("IRT_LAB_THREADS", "2")
    code, out, _ = run(capsys, "search", "exhaustive", "--n", "4", "--window", "3")
    assert code == 0 and json.loads(out)["best_count"] == 4


def test_module_entry_point(grid_file):
    proc = subprocess.run([sys.executable, "-m", "irt_lab", "count", grid_file], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "28"
