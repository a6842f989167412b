import math
import random

import pytest

from votecontrol.errors import ConfigurationError, InvalidInput
from votecontrol.preflib import (HEADER, SocFile, build_experiment_instance, experiment_split,
                                 format_rows, format_soc, format_table, parse_soc,
                                 run_experiment, summary)

MODERN = """# FILE NAME: toy.soc
# DATA TYPE: soc
# NUMBER ALTERNATIVES: 3
# NUMBER VOTERS: 5
# NUMBER UNIQUE ORDERS: 2
# ALTERNATIVE NAME 1: Ann
# ALTERNATIVE NAME 2: Bo
# ALTERNATIVE NAME 3: Cy
3: 1,2,3
2: 3,1,2
"""

LEGACY = """3
1,Ann
2,Bo
3,Cy
5,5,2
3,1,2,3
2,3,1,2
"""

# (m, registered, unregistered) for the five published rows
SPLITS = [(7, 5, 2), (9, 7, 2), (10, 8, 2), (12, 9, 3), (14, 11, 3)]


def shaped(m, voters, seed=0, name="x"):
    rng = random.Random(seed)
    votes, left = [], voters
    while left:
        k = min(left, rng.randint(1, 9))
        order = list(range(m))
        rng.shuffle(order)
        votes.append((k, tuple(order)))
        left -= k
    return SocFile(tuple(f"c{i}" for i in range(m)), tuple(votes), name)


def test_both_dialects_parse_the_same():
    a, b = parse_soc(MODERN), parse_soc(LEGACY)
    assert a.names == b.names == ("Ann", "Bo", "Cy")
    assert a.votes == b.votes == ((3, (0, 1, 2)), (2, (2, 0, 1)))
    assert a.instance_id == "toy.soc"


@pytest.mark.parametrize("dialect", ["modern", "legacy"])
def test_round_trip(dialect):
    for seed in range(10):
        s = shaped(random.Random(seed).randint(1, 8), 20, seed, "r")
        back = parse_soc(format_soc(s, dialect), "r")
        assert (back.names, back.votes) == (s.names, s.votes)
        assert format_soc(back, dialect) == format_soc(s, dialect)


def test_election_view():
    e = parse_soc(MODERN).election()
    assert e.num_voters == 5 and e.name(2) == "Cy"


@pytest.mark.parametrize("bad,where", [
    (MODERN.replace("2: 3,1,2", "2: 3,1"), "line 10"),
    (MODERN.replace("2: 3,1,2", "2: 3,3,2"), "line 10"),
    (MODERN.replace("3: 1,2,3", "0: 1,2,3"), "line 9"),
    (MODERN.replace("3: 1,2,3", "3: 1,{2,3}"), "line 9"),
    (LEGACY.replace("2,3,1,2", "2,3,1,4"), "line 7"),
])
def test_parse_errors_carry_line_numbers(bad, where):
    with pytest.raises(InvalidInput, match=where):
        parse_soc(bad)


def test_header_mismatch_and_empty():
    with pytest.raises(InvalidInput):
        parse_soc(LEGACY.replace("5,5,2", "6,6,2"))
    with pytest.raises(InvalidInput):
        parse_soc("")


def test_one_candidate_parses():
    s = parse_soc("1\n1,solo\n4,4,1\n4,1\n")
    assert s.m == 1 and s.num_voters == 4


def test_split_reproduces_published_rows():
    for m, reg, unreg in SPLITS:
        assert experiment_split(m)[:2] == (reg, unreg)
    assert experiment_split(7) == (5, 2, 1)
    assert experiment_split(10) == (8, 2, 1)
    assert experiment_split(4) == (3, 1, 1)
    for m in range(4, 60):
        reg, u, k = experiment_split(m)
        assert reg + u == m and u == math.ceil(m / 5) and k == math.ceil(u / 3)


def test_experiment_instance():
    s = shaped(7, 153)
    inst = build_experiment_instance(s)
    assert inst.election.num_voters == 153
    assert inst.preferred == 0 and inst.limit == 1
    assert inst.unregistered == frozenset({5, 6})
    with pytest.raises(InvalidInput):
        build_experiment_instance(shaped(3, 4))


def test_run_experiment_isolates_bad_files(tmp_path):
    (tmp_path / "a.soc").write_text(format_soc(shaped(5, 12, 1)))
    (tmp_path / "b.soc").write_text("3\n1,a\n2,b\n")
    (tmp_path / "c.soc").write_text(format_soc(shaped(3, 4, 2)))
    (tmp_path / "d.soc").write_text(format_soc(shaped(13, 3, 3)))
    rows = run_experiment(tmp_path)
    assert [r.outcome for r in rows] == ["solved", "error", "skipped", "skipped"]
    a = rows[0]
    assert (a.registered, a.unregistered, a.voters) == (4, 1, 12)
    assert a.decision is not None
    assert summary(rows) == {"files": 4, "solved": 1, "error": 1, "skipped": 2}
    table = format_table(rows)
    assert table.splitlines()[0].split()[0] == "Instance" and "note b:" in table
    assert format_rows(rows).splitlines()[0].split("\t") == HEADER


def test_missing_directory(tmp_path):
    with pytest.raises(ConfigurationError):
        run_experiment(tmp_path / "absent")
