import csv
import io
import json

import pytest

from mql import cli
from mql.cli import main, parse_range
from mql.core import Answer, Transcript


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_yn(capsys):
    code, out, _ = run(capsys, "solve", "--n", "6", "--k", "3", "--model", "yn")
    assert code == 0 and out.strip() == "q_3(6) = 7"


def test_solve_pairing(capsys):
    code, out, _ = run(capsys, "solve", "--n", "7", "--k", "3", "--model", "pairing")
    assert code == 0 and out.strip() == "q^p_3(7) = 3"


def test_solve_unsolvable(capsys):
    code, out, _ = run(capsys, "solve", "--n", "3", "--k", "3", "--model", "yn")
    assert code == 0 and "unsolvable" in out


def test_solve_infeasible_exit_2(capsys):
    code, _, err = run(capsys, "solve", "--n", "20", "--k", "3")
    assert code == 2 and "exceeds" in err


def test_solve_json_and_strategy(capsys, tmp_path):
    path = tmp_path / "tree.json"
    code, out, _ = run(capsys, "solve", "--n", "4", "--format", "json", "--strategy-out", str(path))
    report = json.loads(out)
    assert code == 0 and report["queries"] == 4 and report["solvable"]
    assert "hit_rate" in report["stats"]
    assert json.loads(path.read_text())["query"] == [0, 1, 2]


def test_solve_threads_flag(capsys):
    code, out, _ = run(capsys, "solve", "--n", "5", "--threads", "2")
    assert code == 0 and out.strip() == "q_3(5) = 4"


def test_play_honest(capsys):
    code, out, _ = run(capsys, "play", "--questioner", "majority3", "--adversary", "honest:RRRB", "--n", "4")
    lines = out.strip().splitlines()
    t = Transcript.from_json(json.loads(lines[0]))
    assert code == 0 and lines[1] == "verdict: Majority(0)"
    assert len(t) <= 4 and lines[2] == f"queries: {len(t)}"


def test_play_coloring_flag(capsys):
    code, out, _ = run(capsys, "play", "--questioner", "pairing-bins", "--coloring", "RRBBB", "--n", "5",
                       "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["verified"] and report["transcript"]["model"] == "pairing"


def test_play_greedy(capsys):
    code, out, _ = run(capsys, "play", "--questioner", "pairing-bins", "--adversary", "greedy", "--n", "8")
    assert code == 0 and "queries: 5" in out


def test_play_partition(capsys):
    code, out, _ = run(capsys, "play", "--questioner", "majority3", "--adversary", "partition", "--n", "6",
                       "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["queries"] >= 5 and report["verified"]


def test_play_optimal_vs_exact(capsys):
    code, out, _ = run(capsys, "play", "--questioner", "optimal", "--adversary", "exact", "--n", "6",
                       "--format", "json")
    assert code == 0 and json.loads(out)["queries"] == 7


@pytest.mark.parametrize("argv", [
    ["play", "--questioner", "nope", "--adversary", "partition", "--n", "6"],
    ["play", "--questioner", "majority3", "--adversary", "honest:RRB", "--n", "4"],
    ["play", "--questioner", "majority3", "--coloring", "RRX", "--n", "3"],
    ["play", "--questioner", "pairing-bins", "--adversary", "partition", "--n", "6"],
    ["play", "--questioner", "majority3", "--n", "4"],
    ["solve"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_play_inconsistent_adversary_exit_1(capsys, monkeypatch):
    # always blames balls 0 and 1, even when the query does not contain them
    monkeypatch.setattr(cli, "make_adversary", lambda *a, **kw: lambda q: Answer.no((0, 1)))
    code, _, err = run(capsys, "play", "--questioner", "pairing-bins", "--adversary", "exact", "--n", "6")
    assert code == 1 and err.startswith("error:")


def test_table_pairing(capsys):
    code, out, err = run(capsys, "table", "--model", "pairing", "--n", "3-8")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and not err
    assert [int(r["exact"]) for r in rows] == [1, 3, 2, 4, 3, 5]
    assert all(r["exact"] == r["lower"] == r["upper"] == r["measured_pairing-bins"] for r in rows)


def test_table_yn(capsys):
    code, out, _ = run(capsys, "table", "--model", "yn", "--n", "4..6")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["exact"] for r in rows] == ["4", "4", "7"]
    assert list(rows[0]) == ["n", "model", "lower", "upper", "exact", "measured_majority3", "measured_majority3-gap"]


def test_table_flags_partial_rows(capsys):
    code, out, err = run(capsys, "table", "--model", "yn", "--n", "8-12", "--exact-max", "6")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and "partial row" in err
    assert all(r["exact"] == "" for r in rows)
    assert [int(r["upper"]) for r in rows] == [8, 8, 11, 11, 12]
    assert [int(r["lower"]) for r in rows] == [7, 6, 9, 8, 11]


def test_parse_range():
    assert parse_range("3-8") == range(3, 9)
    assert parse_range("4..6") == range(4, 7)
    assert parse_range("5") == range(5, 6)


def test_verify_json_subset(capsys):
    code, out, _ = run(capsys, "verify", "--fast", "--json", "--only", "exact-yn-small", "pair-queries")
    summary = json.loads(out)
    assert code == 0 and summary["passed"]
    assert [c["name"] for c in summary["checks"]] == ["exact-yn-small", "pair-queries"]
