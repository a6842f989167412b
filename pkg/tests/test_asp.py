import random
import sys

import pytest

from votecontrol.asp import (CLINGO_FLAGS, SOLVER_ENV, AspArtifact, build_artifact, classify, cross_check,
                             emit_program, facts_from_ccac, parse_facts, resolve_solver,
                             run_external, solver_available, solver_command)
from votecontrol.control import ControlInstance, solve_control
from votecontrol.election import Election, Vote
from votecontrol.errors import ConfigurationError, InvalidInput
from votecontrol.generate import random_control_instance, random_election


def ccac(e, preferred, unreg, k):
    return ControlInstance("kemeny", "ccac", e, preferred, k, unregistered=frozenset(unreg))


# --- program text ----------------------------------------------------------------

def test_program_is_stable():
    assert emit_program() == emit_program()


def test_program_has_key_rules():
    text = emit_program()
    assert "{ candidate(C) : ucandidate(C) } K :- limit(K)." in text
    assert "gpref(X,C) | ungpref(X,C) :- position(X), candidate(C)." in text
    assert ":- preferredCand(X), gpref(Y,X), position(Y), Y != 1." in text
    assert "sat :- #sum{ M,C1,C2,pos : gwrankCp(C1,C2,M); -N,D1,D2,neg : gwrankC(D1,D2,N) } >= 0." in text
    assert "sat :- preferredCand(X), gprefp(1,X)." in text
    assert text.rstrip().endswith(":- not sat.")
    assert "grepf" in text and "grepf(" not in text.replace("% ", "")


def test_saturation_part_has_six_rules():
    part = emit_program().split("% --- saturate ---\n")[1]
    rules = [l for l in part.splitlines() if l and not l.startswith("%")]
    assert len(rules) == 7 and rules[-1] == ":- not sat."


# --- facts -------------------------------------------------------------------------

def test_single_vote_facts():
    fb = facts_from_ccac(ccac(Election(3, (Vote(3, (2, 0, 1)),)), 0, (), 0))
    text = fb.text()
    assert "prefnum(1)." in text and "votecount(1,3)." in text and "voternum(3)." in text
    assert text.count("p(1,") == 3


def test_registered_first_numbering():
    e = Election(3, (Vote(1, (1, 0, 2)),))
    fb = facts_from_ccac(ccac(e, 2, (0,), 1))
    assert (fb.rcandnum, fb.ucandnum) == (2, 1)
    assert fb.labels == (1, 2, 0)
    assert fb.preferred == 2
    assert fb.votes == ((1, (1, 3, 2)),)


def test_ed_shaped_voter_total():
    rng = random.Random(0)
    votes = []
    left = 153
    while left:
        k = min(left, rng.randint(1, 20))
        order = list(range(7))
        rng.shuffle(order)
        votes.append(Vote(k, tuple(order)))
        left -= k
    fb = facts_from_ccac(ccac(Election(7, tuple(votes)), 0, (5, 6), 1))
    assert "voternum(153)." in fb.text()
    assert (fb.rcandnum, fb.ucandnum) == (5, 2)


def test_identical_votes_merge_and_order_is_irrelevant():
    e = Election(3, (Vote(1, (0, 1, 2)), Vote(2, (2, 1, 0)), Vote(1, (0, 1, 2))))
    fb = facts_from_ccac(ccac(e, 0, (2,), 1))
    assert fb.votes == ((2, (1, 2, 3)), (2, (3, 2, 1)))
    rng = random.Random(2)
    for _ in range(20):
        e = random_election(rng, 4, 6)
        vs = list(e.votes)
        rng.shuffle(vs)
        a = facts_from_ccac(ccac(e, 0, (3,), 1))
        b = facts_from_ccac(ccac(e.with_votes(vs), 0, (3,), 1))
        assert sorted(a.votes) == sorted(b.votes) and a.voternum == b.voternum


def test_facts_round_trip():
    rng = random.Random(5)
    for _ in range(30):
        inst = random_control_instance(rng, "kemeny", "ccac", m=rng.randint(2, 5),
                                       voters=rng.randint(1, 6))
        fb = facts_from_ccac(inst)
        assert parse_facts(fb.text()) == fb
        back = fb.to_instance()
        assert back.unregistered == inst.unregistered and back.preferred == inst.preferred
        assert solve_control(back).decision == solve_control(inst).decision


def test_facts_reject_bad_input():
    part = Election(3, (Vote(1, (0, 1), True),))
    with pytest.raises(InvalidInput):
        facts_from_ccac(ccac(part, 0, (2,), 1))
    with pytest.raises(InvalidInput):
        facts_from_ccac(ControlInstance("kemeny", "ccdc", Election(2), 0, 1))
    with pytest.raises(InvalidInput):
        parse_facts("prefnum(1).\n")
    with pytest.raises(InvalidInput):
        parse_facts("prefnum(1). rcandnum(1). ucandnum(0). limit(0). preferredCand(1)."
                    " voternum(2). votecount(1,1). p(1,1,1).")


# --- solver plumbing ---------------------------------------------------------------

def test_classify_tokens():
    assert classify(10, "SATISFIABLE\n") == "sat"
    assert classify(30, "Answer: 1\nSATISFIABLE") == "sat"
    assert classify(20, "UNSATISFIABLE\n") == "unsat"
    assert classify(None, "", timed_out=True) == "timeout"
    assert classify(1, "std::bad_alloc") == "oom"
    assert classify(-9, "") == "oom"
    assert classify(11, "INTERRUPTED") == "timeout"
    assert classify(65, "parse error") == "solver_error"


def _fake(tmp_path, body):
    script = tmp_path / "fake.py"
    script.write_text("import sys, time\n" + body + "\n")
    return [sys.executable, str(script)]


def test_fake_solver_outcomes(tmp_path):
    art = build_artifact(ccac(Election(2, (Vote(1, (0, 1)),)), 0, (), 0))
    sat = run_external(art, _fake(tmp_path, "print('SATISFIABLE'); sys.exit(10)"), 10, None)
    assert sat.status == "sat" and sat.decision is True
    uns = run_external(art, _fake(tmp_path, "print('UNSATISFIABLE'); sys.exit(20)"), 10, None)
    assert uns.status == "unsat" and uns.decision is False
    slow = run_external(art, _fake(tmp_path, "time.sleep(5)"), 0.5, None)
    assert slow.status == "timeout" and slow.decision is None
    bad = run_external(art, _fake(tmp_path, "print('*** ERROR: syntax'); sys.exit(65)"), 10, None)
    assert bad.status == "solver_error"


def test_fake_solver_sees_the_file(tmp_path):
    art = build_artifact(ccac(Election(2, (Vote(1, (0, 1)),)), 0, (), 0))
    res = run_external(art, _fake(tmp_path, "print(open(sys.argv[1]).read().count('rcandnum(2).'))"
                                  "; print('SATISFIABLE')"), 10, None)
    assert res.output.split()[0] == "1"
    written = art.write(tmp_path / "x.lp")
    assert isinstance(written, AspArtifact) and written.path.read_text().count("prefnum(1).") == 1


def test_missing_solver_is_a_configuration_error(monkeypatch):
    monkeypatch.delenv(SOLVER_ENV, raising=False)
    with pytest.raises(ConfigurationError):
        resolve_solver("/no/such/solver")
    monkeypatch.setenv(SOLVER_ENV, "/no/such/solver")
    assert not solver_available()


def test_environment_variable_is_used(monkeypatch):
    monkeypatch.setenv(SOLVER_ENV, f"{sys.executable} -m clingo")
    assert resolve_solver() == [sys.executable, "-m", "clingo"]


def test_clingo_commands_get_flags():
    assert solver_command(["/usr/bin/clingo"]) == ["/usr/bin/clingo"] + CLINGO_FLAGS
    assert solver_command([sys.executable, "-m", "clingo"])[-1] == CLINGO_FLAGS[-1]
    assert solver_command(["clingo", "--eq=3"]) == ["clingo", "--eq=3"]
    assert solver_command(["other-solver"]) == ["other-solver"]


needs_solver = pytest.mark.skipif(not solver_available(), reason="no ASP solver configured")


@needs_solver
def test_cross_check_small_cases():
    e = Election(3, (Vote(2, (0, 1, 2)), Vote(1, (1, 2, 0))))
    assert cross_check(ccac(e, 0, (), 0), time_limit=120).agree
    assert cross_check(ccac(e, 1, (), 0), time_limit=120).agree
    rng = random.Random(1)
    for _ in range(8):
        inst = random_control_instance(rng, "kemeny", "ccac", m=4, voters=5)
        assert cross_check(inst, time_limit=120).agree


@needs_solver
def test_instance_lost_by_equivalence_preprocessing():
    # default clasp preprocessing reports no answer set here; p already wins
    e = Election(4, (Vote(1, (0, 3, 2, 1)), Vote(1, (0, 1, 3, 2)), Vote(2, (0, 2, 1, 3)),
                     Vote(1, (1, 3, 0, 2))))
    inst = ccac(e, 1, (0, 2), 1)
    assert solve_control(inst).witness == ()
    assert cross_check(inst, time_limit=120).agree
