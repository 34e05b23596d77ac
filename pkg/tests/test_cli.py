import json
import subprocess
import sys

import pytest

from lbdd.cli import main
from lbdd.formats import parse_instance
from lbdd.instance import PenaltySpec, make_instance
from lbdd.oracle import exhaustive_solve

from test_formats import I1_TEXT


@pytest.fixture
def i1_file(tmp_path):
    p = tmp_path / "i1.txt"
    p.write_text(I1_TEXT)
    return p


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_prints_objective_and_assignment(capsys, i1_file):
    code, out, _ = run(capsys, "solve", i1_file)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "objective 16"
    assert lines[-3:] == ["0 0", "1 0", "2 1"]


def test_solve_certify_and_output(capsys, i1_file, tmp_path):
    dest = tmp_path / "res.txt"
    code, out, _ = run(capsys, "solve", i1_file, "--certify", "--output", dest)
    assert code == 0 and out == ""
    assert dest.read_text().splitlines()[-1] == "certificate OPTIMAL"
    code, out, _ = run(capsys, "verify", i1_file, dest)
    assert code == 0 and "certificate OPTIMAL" in out


def test_malformed_row_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text(I1_TEXT.replace("demand 1 costs 2 4", "demand 1 costs 2"))
    code, out, err = run(capsys, "solve", p)
    assert code == 2 and out == ""
    assert "line 6" in err and "demand 1" in err


def test_missing_file_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "solve", tmp_path / "nope.txt")
    assert code == 2 and "nope.txt" in err


def test_verify_rejects_suboptimal(capsys, i1_file, tmp_path):
    a = tmp_path / "a.txt"
    a.write_text("0 1\n1 1\n2 0\n")
    code, out, _ = run(capsys, "verify", i1_file, a)
    assert code == 3
    assert "objective 25" in out and "NOT_OPTIMAL" in out and "witness" in out


def test_verify_claimed_objective_mismatch(capsys, i1_file, tmp_path):
    a = tmp_path / "a.txt"
    a.write_text("objective 15\n0 0\n1 0\n2 1\n")
    code, out, _ = run(capsys, "verify", i1_file, a)
    assert code == 3 and "does not match" in out


def test_verify_incomplete_or_out_of_range(capsys, i1_file, tmp_path):
    a = tmp_path / "a.txt"
    a.write_text("0 0\n1 0\n")
    assert run(capsys, "verify", i1_file, a)[0] == 2
    a.write_text("0 0\n1 0\n2 7\n")
    assert run(capsys, "verify", i1_file, a)[0] == 2


def test_hard_capacity_solve_and_verify(capsys, tmp_path):
    inst = tmp_path / "h.txt"
    inst.write_text("lbdd 1\n2 3 hard_capacity\ncenter 0 cap 1 penalty infinite\ncenter 1 cap 1 penalty infinite\n"
                    "demand 0 costs 4 9\ndemand 1 costs 3 8\ndemand 2 costs 5 1\n")
    res = tmp_path / "r.txt"
    code, _, _ = run(capsys, "solve", inst, "--certify", "-o", res)
    text = res.read_text()
    assert code == 0 and "objective 4" in text and "unassigned 0" in text and "certificate OPTIMAL" in text
    code, out, _ = run(capsys, "verify", inst, res)
    assert code == 0, out
    res.write_text("0 0\n1 1\n")
    code, out, _ = run(capsys, "verify", inst, res)
    assert code == 3
    res.write_text("0 0\n1 0\n2 1\n")
    code, out, _ = run(capsys, "verify", inst, res)
    assert code == 3 and "capacity exceeded" in out


def test_hard_flag_on_overload_file(capsys, i1_file):
    code, out, _ = run(capsys, "solve", i1_file, "--hard-capacity")
    assert code == 0
    assert out.startswith("objective 4\n") and "unassigned 1" in out


def _objectives(out):
    return [int(line.rsplit(" ", 1)[1]) for line in out.splitlines() if line.startswith(("line", "initial"))]


def test_dynamic_i1_stream(capsys, tmp_path):
    start = tmp_path / "empty.txt"
    start.write_text("lbdd 1\n2 0 overload_allowed\ncenter 0 cap 1 penalty constant 10\ncenter 1 cap 1 penalty constant 10\n")
    ev = tmp_path / "ev.txt"
    ev.write_text("insert 1 5\ninsert 2 4\ninsert 6 3\nremove 2\n")
    code, out, _ = run(capsys, "dynamic", start, ev, "--check-each")
    assert code == 0
    objs = _objectives(out)
    assert objs == [0, 1, 5, 16, 5]
    # Every prefix checked against brute force, independently of the engine.
    rows = [[1, 5], [2, 4], [6, 3]]
    pens = [PenaltySpec.constant(10)] * 2
    for m, want in zip((1, 2, 3), objs[1:4]):
        assert exhaustive_solve(make_instance(rows[:m], [1, 1], pens))[0] == want
    assert exhaustive_solve(make_instance(rows[:2], [1, 1], pens))[0] == objs[4]
    assert out.count("oracle agrees") == 4


def test_dynamic_errors(capsys, i1_file, tmp_path):
    ev = tmp_path / "ev.txt"
    ev.write_text("cap 0 -1\ncap 0 -1\n")
    code, _, err = run(capsys, "dynamic", i1_file, ev)
    assert code == 2 and "line 2" in err
    ev.write_text("remove 9\n")
    code, _, err = run(capsys, "dynamic", i1_file, ev)
    assert code == 2 and "unknown demand 9" in err
    ev.write_text("cap 4 +1\n")
    assert run(capsys, "dynamic", i1_file, ev)[0] == 2
    ev.write_text("explode\n")
    assert run(capsys, "dynamic", i1_file, ev)[0] == 2


def test_dynamic_empty_stream(capsys, i1_file, tmp_path):
    ev = tmp_path / "ev.txt"
    ev.write_text("# nothing\n")
    code, out, _ = run(capsys, "dynamic", i1_file, ev)
    assert code == 0 and out.splitlines() == ["initial objective 16"]


def test_dynamic_rejects_hard_instances(capsys, tmp_path):
    inst = tmp_path / "h.txt"
    inst.write_text("lbdd 1\n1 0 hard_capacity\ncenter 0 cap 1 penalty infinite\n")
    ev = tmp_path / "ev.txt"
    ev.write_text("")
    assert run(capsys, "dynamic", inst, ev)[0] == 2


def test_gen_is_deterministic(capsys, tmp_path):
    args = ["gen", "--k", 3, "--n", 40, "--seed", 9, "--cost-mode", "planar"]
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert run(capsys, *args, "-o", a)[0] == 0
    assert run(capsys, *args, "-o", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    code, out, _ = run(capsys, *args)
    assert out.encode() == a.read_bytes()
    c = tmp_path / "c.txt"
    run(capsys, "gen", "--k", 3, "--n", 40, "--seed", 10, "--cost-mode", "planar", "-o", c)
    assert c.read_bytes() != a.read_bytes()


def test_gen_then_solve(capsys, tmp_path):
    p = tmp_path / "g.txt"
    run(capsys, "gen", "--k", 3, "--n", 6, "--seed", 1, "--max-cost", 20, "-o", p)
    inst = parse_instance(p.read_text())
    code, out, _ = run(capsys, "solve", p, "--certify")
    assert code == 0 and out.startswith(f"objective {exhaustive_solve(inst)[0]}\n")


def test_gen_rejects_bad_sizes(capsys):
    assert run(capsys, "gen", "--k", 0, "--n", 3)[0] == 2


def test_bench_formats(capsys):
    code, out, _ = run(capsys, "bench", "--k", "2", "--n", "0,50,100", "--repeat", 1, "--format", "jsonl")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert [r["n"] for r in rows] == [0, 50, 100]
    assert rows[0]["seconds"] < 0.05 and rows[0]["loops_removed"] == 0
    code, out, _ = run(capsys, "bench", "--n", "20", "--repeat", 1, "--format", "csv")
    assert out.splitlines()[0].startswith("k,n,seconds")
    code, out, _ = run(capsys, "bench", "--n", "20", "--repeat", 1)
    assert "us/insert" in out.splitlines()[0]


def test_module_entry_point(i1_file):
    proc = subprocess.run([sys.executable, "-m", "lbdd", "solve", str(i1_file)], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("objective 16")
