import subprocess
import sys

import pytest

from votecontrol.asp import solver_available
from votecontrol.cli import dispatch
from votecontrol.control import ControlInstance, format_control, parse_control
from votecontrol.election import Election, Vote, format_election
from votecontrol.formulas import Qbf2Formula, format_qcnf


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_winners_unanimous(files):
    f = files("e.txt", format_election(Election(3, (Vote(4, (2, 0, 1)),))))
    for rule in ("kemeny", "young", "dodgson"):
        code, out = dispatch(["winners", "--rule", rule, "--election", f])
        assert code == 0 and "winners: 3\n" in out


def test_score(files):
    f = files("e.txt", format_election(Election(3, (Vote(2, (0, 1, 2)), Vote(1, (1, 2, 0))))))
    code, out = dispatch(["score", "--rule", "kemeny", "--election", f])
    assert code == 0 and "score: 2" in out
    code, out = dispatch(["score", "--rule", "young", "--election", f, "--preferred", "1"])
    assert code == 0 and "score 1: 3" in out
    code, out = dispatch(["score", "--rule", "dodgson", "--election", f, "--preferred", "9"])
    assert code == 1


def test_control_reports_decision_not_exit_code(files):
    e = Election(3, (Vote(2, (1, 0, 2)), Vote(1, (0, 2, 1))))
    f = files("c.txt", format_control(ControlInstance("kemeny", "ccdc", e, 0, 1)))
    code, out = dispatch(["control", "--instance", f])
    assert code == 0 and "control possible: yes" in out and "witness candidates: 2" in out
    code, out = dispatch(["control", "--instance", f, "--limit", "0"])
    assert code == 0 and "control possible: no" in out


def test_control_overrides(files):
    e = Election(3, (Vote(2, (1, 0, 2)),))
    f = files("c.txt", format_control(ControlInstance("kemeny", "ccdv", e, 0, 1)))
    code, out = dispatch(["control", "--instance", f, "--rule", "young", "--preferred", "2"])
    assert code == 0 and "rule: young" in out and "preferred: 2" in out


def test_reduce_with_trace(files, tmp_path):
    f = files("f.qcnf", format_qcnf(Qbf2Formula(1, ((1, 1, 2), (-1, -2, -2), (-1, 2, 2)))))
    code, out = dispatch(["reduce", "qsat2-vcms", "--instance", f, "--trace"])
    assert code == 0
    body, trace = out.split("--- trace ---\n")
    assert "h_vertices: 17" in trace and "reduction: qsat2-vcms" in trace
    dest = tmp_path / "out.txt"
    code, out = dispatch(["reduce", "qsat2-vcms", "--instance", f, "--output", str(dest)])
    assert code == 0 and dest.read_text() == body


def test_verify_chain():
    code, out = dispatch(["verify-chain", "--chain", "gnd-vcms", "--trials", "10"])
    assert code == 0 and "all stages agree" in out
    code, out = dispatch(["verify-chain", "--chain", "sat3-dodgson", "--exhaustive-n", "1",
                          "--max-m", "1"])
    assert code == 0 and "all stages agree" in out
    assert dispatch(["verify-chain", "--chain", "nope"])[0] == 1


def test_asp_emit(files):
    e = Election(3, (Vote(1, (0, 1, 2)),))
    f = files("c.txt", format_control(ControlInstance("kemeny", "ccac", e, 0, 1,
                                                      unregistered=frozenset({2}))))
    code, out = dispatch(["asp-emit", "--instance", f])
    assert code == 0 and "ucandnum(1)." in out and ":- not sat." in out


@pytest.mark.skipif(not solver_available(), reason="no ASP solver configured")
def test_asp_solve_cross_check(files):
    e = Election(3, (Vote(2, (1, 0, 2)), Vote(1, (0, 2, 1))))
    f = files("c.txt", format_control(ControlInstance("kemeny", "ccac", e, 0, 1,
                                                      unregistered=frozenset({2}))))
    code, out = dispatch(["asp-solve", "--instance", f, "--cross-check", "--time-limit", "120"])
    assert code == 0 and "agree: yes" in out


def test_asp_solve_bad_solver(files):
    e = Election(2, (Vote(1, (0, 1)),))
    f = files("c.txt", format_control(ControlInstance("kemeny", "ccac", e, 0, 0,
                                                      unregistered=frozenset())))
    assert dispatch(["asp-solve", "--instance", f, "--solver-bin", "/no/such"])[0] == 1


def test_preflib_missing_dir(tmp_path):
    assert dispatch(["preflib-experiment", "--dir", str(tmp_path / "none")])[0] == 1


def test_gen_is_seeded():
    for t in ("ccac", "ccdv", "vcma", "gnd", "election", "cnf", "qcnf"):
        a = dispatch(["gen", "--type", t, "--seed", "4"])
        b = dispatch(["gen", "--type", t, "--seed", "4"])
        assert a == b and a[0] == 0
    _, text = dispatch(["gen", "--type", "ccav", "--rule", "dodgson", "--seed", "1"])
    assert parse_control(text).rule == "dodgson"


def test_usage_errors(files):
    assert dispatch(["winners", "--rule", "borda", "--election", "x"])[0] == 1
    assert dispatch(["winners", "--bogus"])[0] == 1
    assert dispatch([])[0] == 1
    assert dispatch(["winners", "--rule", "kemeny", "--election", "/no/file"])[0] == 1
    bad = files("bad.txt", "candidates: 2\n1: 1,3\n")
    assert dispatch(["winners", "--rule", "kemeny", "--election", bad])[0] == 1


def test_resource_limit_exit_code(files):
    e = Election(2, (Vote(1, (0, 1)),))
    f = files("c.txt", format_control(ControlInstance("kemeny", "ccac", e, 0, 0,
                                                      unregistered=frozenset())))
    slow = files("slow.py", "import time\ntime.sleep(5)\n")
    code, out = dispatch(["asp-solve", "--instance", f, "--solver-bin",
                          f"{sys.executable} {slow}", "--time-limit", "0.5"])
    assert code == 2 and "timeout" in out


def test_console_entry_point(files):
    f = files("e.txt", format_election(Election(2, (Vote(1, (1, 0)),))))
    proc = subprocess.run([sys.executable, "-m", "votecontrol", "winners", "--rule", "kemeny",
                           "--election", f], capture_output=True, text=True)
    assert proc.returncode == 0 and "winners: 2" in proc.stdout
